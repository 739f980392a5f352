#include "ccgboot/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ccgboot/error.hpp"

namespace ccgboot::corpus {

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const DataPoint& dp : datapoints) n += dp.tokens.size();
  return n;
}

namespace {

std::vector<std::string> string_array(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw DataError(std::string("field '") + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw DataError(std::string("field '") + field + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

DataPoint parse_line(const std::string& line, std::optional<long long>& index) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("expected a JSON object");
  if (!j.contains("tokens")) throw DataError("missing field 'tokens'");
  if (!j.contains("lf") || !j["lf"].is_string()) throw DataError("missing string field 'lf'");
  DataPoint dp{0, string_array(j["tokens"], "tokens"), lf::parse_lf(j["lf"].get<std::string>()), {}};
  if (!lf::is_closed(dp.lf)) throw DataError("LF is not closed");
  if (j.contains("index")) {
    if (!j["index"].is_number_integer()) throw DataError("field 'index' must be an integer");
    index = j["index"].get<long long>();
  }
  if (j.contains("tags")) {
    dp.tags = string_array(j["tags"], "tags");
    if (dp.tags.size() != dp.tokens.size()) throw DataError("'tags' and 'tokens' differ in length");
  }
  return dp;
}

void drop_communicators(DataPoint& dp) {
  if (dp.tags.empty()) return;
  std::vector<std::string> tokens, tags;
  for (std::size_t i = 0; i < dp.tokens.size(); ++i) {
    if (dp.tags[i] == "co") continue;
    tokens.push_back(dp.tokens[i]);
    tags.push_back(dp.tags[i]);
  }
  dp.tokens = std::move(tokens);
  dp.tags = std::move(tags);
}

}  // namespace

Corpus read_corpus(std::istream& in, const LoadOptions& options, const std::string& name) {
  Corpus c;
  c.name = name;
  std::string line;
  std::size_t line_no = 0;
  std::set<long long> seen_indices;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::optional<DataPoint> parsed;
    std::optional<long long> index;
    try {
      parsed = parse_line(line, index);
    } catch (const Error& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (index && !seen_indices.insert(*index).second)
      throw DataError("line " + std::to_string(line_no) + ": duplicate index " + std::to_string(*index));
    DataPoint& dp = *parsed;
    if (options.filter_co) drop_communicators(dp);
    if (dp.tokens.empty()) {
      if (options.filter_co) continue;
      throw DataError("line " + std::to_string(line_no) + ": no tokens");
    }
    dp.index = c.datapoints.size();
    c.datapoints.push_back(std::move(dp));
  }
  return c;
}

Corpus load_corpus(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus " + path);
  return read_corpus(in, options, path);
}

std::string to_jsonl_line(const DataPoint& dp) {
  nlohmann::json j{{"tokens", dp.tokens}, {"lf", lf::render(dp.lf)}};
  if (!dp.tags.empty()) j["tags"] = dp.tags;
  return j.dump();
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const DataPoint& dp : corpus.datapoints) out << to_jsonl_line(dp) << '\n';
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write_corpus(out, corpus);
}

// ---------------------------------------------------------------------------
// Gold lexicon

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

LexicalEntry parse_entry(const std::string& text) {
  std::size_t bar = text.find("||");
  if (bar == std::string::npos) throw DataError("entry without '||'");
  LexicalEntry e{lf::parse_lf(trim(std::string_view(text).substr(0, bar))),
                 ccg::parse_category(trim(std::string_view(text).substr(bar + 2)))};
  return e;
}

std::vector<std::string> split_entries(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string piece = trim(text.substr(start, comma - start));
    if (!piece.empty()) out.push_back(piece);
    start = comma + 1;
  }
  return out;
}

}  // namespace

GoldLexicon read_gold_lexicon(std::istream& in, bool lenient) {
  GoldLexicon lex;
  std::string line, word;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::string_view rest;
    if (t[0] == ',') {
      if (word.empty()) throw DataError("line " + std::to_string(line_no) + ": continuation before any word");
      rest = std::string_view(t).substr(1);
    } else {
      std::size_t colon = t.find(':');
      if (colon == std::string::npos || colon == 0)
        throw DataError("line " + std::to_string(line_no) + ": expected 'word:entries'");
      word = trim(std::string_view(t).substr(0, colon));
      rest = std::string_view(t).substr(colon + 1);
    }
    auto& entries = lex.entries[word];
    for (const std::string& piece : split_entries(rest)) {
      try {
        entries.push_back(parse_entry(piece));
      } catch (const Error& e) {
        if (!lenient) throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        lex.rejected.push_back(word + ": " + piece);
      }
    }
  }
  return lex;
}

GoldLexicon load_gold_lexicon(const std::string& path, bool lenient) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path);
  return read_gold_lexicon(in, lenient);
}

// ---------------------------------------------------------------------------
// Word orders

const std::vector<WordOrder>& all_word_orders() {
  static const std::vector<WordOrder> orders{WordOrder::SOV, WordOrder::SVO, WordOrder::VSO,
                                             WordOrder::OSV, WordOrder::OVS, WordOrder::VOS};
  return orders;
}

std::string to_string(WordOrder order) {
  switch (order) {
    case WordOrder::SOV: return "SOV";
    case WordOrder::SVO: return "SVO";
    case WordOrder::VSO: return "VSO";
    case WordOrder::OSV: return "OSV";
    case WordOrder::OVS: return "OVS";
    case WordOrder::VOS: return "VOS";
  }
  return "?";
}

WordOrder parse_word_order(std::string_view text) {
  for (WordOrder o : all_word_orders())
    if (to_string(o) == text) return o;
  throw DataError("unknown word order '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Synthetic corpus

namespace {

struct Word {
  std::string surface;
  std::string tag;
  std::string lemma;
  std::vector<std::string> features;

  lf::Term term() const { return lf::Term::constant(tag, lemma, features); }
};

struct Vocabulary {
  std::vector<Word> names, nouns, dets, transitive, intransitive;
  Word copula;
};

Vocabulary vocabulary(std::size_t size) {
  if (size != 20) throw DataError("the synthetic vocabulary has exactly 20 words");
  Vocabulary v;
  for (const char* n : {"adam", "eve", "max", "sue", "tom"}) v.names.push_back({n, "n:prop", n, {}});
  for (const char* n : {"dog", "cat", "ball", "book", "cup"}) v.nouns.push_back({n, "n", n, {}});
  v.dets = {{"the", "det:art", "the", {}}, {"a", "det:art", "a", {}}};
  v.transitive = {{"sees", "v", "see", {"3s"}},
                  {"likes", "v", "like", {"3s"}},
                  {"wants", "v", "want", {"3s"}},
                  {"takes", "v", "take", {"3s"}}};
  v.intransitive = {{"runs", "v", "run", {"3s"}}, {"sleeps", "v", "sleep", {"3s"}}, {"jumps", "v", "jump", {"3s"}}};
  v.copula = {"is", "cop", "equals", {}};
  return v;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::size_t zipf(std::size_t n, double a, double b) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = 1.0 / std::pow(static_cast<double>(k + 1) + b, a);
    double total = 0;
    for (double x : w) total += x;
    double u = uniform() * total;
    for (std::size_t k = 0; k < n; ++k) {
      if (u < w[k]) return k;
      u -= w[k];
    }
    return n - 1;
  }

 private:
  std::mt19937_64 rng_;
};

struct Phrase {
  std::vector<const Word*> words;
  lf::Term term;
};

Phrase noun_phrase(const Vocabulary& v, const SynthSpec& spec, Sampler& s) {
  if (s.uniform() < spec.p_name) {
    const Word& w = v.names[s.zipf(v.names.size(), spec.zipf_a, spec.zipf_b)];
    return {{&w}, w.term()};
  }
  const Word& d = v.dets[s.zipf(v.dets.size(), spec.zipf_a, spec.zipf_b)];
  const Word& n = v.nouns[s.zipf(v.nouns.size(), spec.zipf_a, spec.zipf_b)];
  return {{&d, &n}, lf::Term::application(d.term(), {n.term()})};
}

void append(std::vector<const Word*>& out, const std::vector<const Word*>& words) {
  out.insert(out.end(), words.begin(), words.end());
}

// Surface order of subject, verb and (optional) object.
std::vector<const Word*> arrange(WordOrder order, const Phrase& subj, const Word& verb, const Phrase* obj) {
  std::vector<const Word*> out;
  std::vector<const Word*> v{&verb};
  if (!obj) {
    bool subject_first = order == WordOrder::SOV || order == WordOrder::SVO || order == WordOrder::OSV;
    append(out, subject_first ? subj.words : v);
    append(out, subject_first ? v : subj.words);
    return out;
  }
  std::string pattern = to_string(order);
  for (char c : pattern) {
    if (c == 'S') append(out, subj.words);
    if (c == 'V') append(out, v);
    if (c == 'O') append(out, obj->words);
  }
  return out;
}

bool has_repeat(const std::vector<const Word*>& words) {
  std::set<const Word*> seen(words.begin(), words.end());
  return seen.size() != words.size();
}

}  // namespace

Corpus synth_corpus(const SynthSpec& spec) {
  const Vocabulary v = vocabulary(spec.vocab);
  auto prob = [](double p) { return p >= 0 && p <= 1; };
  if (!prob(spec.p_transitive) || !prob(spec.p_intransitive) || !prob(spec.p_name) ||
      spec.p_transitive + spec.p_intransitive > 1)
    throw DataError("synthetic corpus probabilities must lie in [0, 1] and p_transitive + p_intransitive <= 1");
  if (!(spec.zipf_a > 0) || !(spec.zipf_b > -1)) throw DataError("zipf parameters need a > 0 and b > -1");
  Sampler s(spec.seed);
  Corpus c;
  c.name = "synth-" + to_string(spec.order);
  while (c.datapoints.size() < spec.sentences) {
    double kind = s.uniform();
    Phrase subj = noun_phrase(v, spec, s);
    std::vector<const Word*> words;
    lf::Term term = subj.term;
    if (kind < spec.p_transitive || kind >= spec.p_transitive + spec.p_intransitive) {
      const Word& verb = kind < spec.p_transitive
                             ? v.transitive[s.zipf(v.transitive.size(), spec.zipf_a, spec.zipf_b)]
                             : v.copula;
      Phrase obj = noun_phrase(v, spec, s);
      words = arrange(spec.order, subj, verb, &obj);
      term = lf::Term::application(verb.term(), {subj.term, obj.term});
    } else {
      const Word& verb = v.intransitive[s.zipf(v.intransitive.size(), spec.zipf_a, spec.zipf_b)];
      words = arrange(spec.order, subj, verb, nullptr);
      term = lf::Term::application(verb.term(), {subj.term});
    }
    if (has_repeat(words)) continue;
    DataPoint dp{c.datapoints.size(), {}, term, {}};
    for (const Word* w : words) {
      dp.tokens.push_back(w->surface);
      dp.tags.push_back(w->tag);
    }
    c.datapoints.push_back(std::move(dp));
  }
  return c;
}

GoldLexicon synth_gold_lexicon(const SynthSpec& spec) {
  const Vocabulary v = vocabulary(spec.vocab);
  const WordOrder o = spec.order;
  // Which argument the transitive verb consumes first, and from which side.
  bool object_first = o != WordOrder::OSV && o != WordOrder::VSO;
  std::string trans_cat = o == WordOrder::SVO   ? "S\\NP/NP"
                          : o == WordOrder::SOV || o == WordOrder::OSV ? "S\\NP\\NP"
                          : o == WordOrder::OVS ? "S/NP\\NP"
                                                : "S/NP/NP";
  bool subject_first = o == WordOrder::SOV || o == WordOrder::SVO || o == WordOrder::OSV;
  std::string intrans_cat = subject_first ? "S\\NP" : "S/NP";

  auto constant_text = [](const Word& w) {
    std::string s = w.tag + "|" + w.lemma;
    for (const std::string& f : w.features) s += "-" + f;
    return s;
  };
  GoldLexicon lex;
  auto add = [&](const Word& w, const std::string& lf_text, const std::string& cat) {
    lex.entries[w.surface].push_back(LexicalEntry{lf::parse_lf(lf_text), ccg::parse_category(cat)});
  };
  for (const Word& w : v.names) add(w, constant_text(w), "NP");
  for (const Word& w : v.nouns) add(w, constant_text(w), "N");
  for (const Word& w : v.dets) add(w, "L0." + constant_text(w) + " 0", "NP/N");
  std::string args = object_first ? " 1 0" : " 0 1";
  for (const Word& w : v.transitive) add(w, "L0.L1." + constant_text(w) + args, trans_cat);
  add(v.copula, "L0.L1." + constant_text(v.copula) + args, trans_cat);
  for (const Word& w : v.intransitive) add(w, "L0." + constant_text(w) + " 0", intrans_cat);
  return lex;
}

}  // namespace ccgboot::corpus
