#include "ccgboot/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ccgboot/error.hpp"
#include "ccgboot/type_system.hpp"

namespace ccgboot::eval {

WordOrder WordOrderScores::best() const {
  auto it = std::max_element(normalized.begin(), normalized.end());
  return corpus::all_word_orders()[static_cast<std::size_t>(it - normalized.begin())];
}

namespace {

ccg::Category cat(const char* text) { return ccg::parse_category(text); }

}  // namespace

WordOrderScores word_order_scores(const model::ModelState& m) {
  // The verb shell: "1 0" consumes the object first, "0 1" the subject.
  const lf::ShellTerm object_first = lf::to_shell(lf::parse_lf("L0.L1.v|x 1 0"));
  const lf::ShellTerm subject_first = lf::to_shell(lf::parse_lf("L0.L1.v|x 0 1"));
  const ccg::Category s = cat("S"), np = cat("NP");
  const ccg::Category s_np = cat("S\\NP"), s_fnp = cat("S/NP");
  const ccg::Category tv = cat("S\\NP/NP");  // undirected context shared by all six

  double subj_left = m.p_split(s, np, s_np);
  double subj_right = m.p_split(s, s_fnp, np);
  double p_obj_first = m.p_shell(object_first, tv);
  double p_subj_first = m.p_shell(subject_first, tv);

  WordOrderScores out;
  auto set = [&](WordOrder o, double v) { out.raw[static_cast<std::size_t>(o)] = v; };
  set(WordOrder::SVO, subj_left * m.p_split(s_np, cat("S\\NP/NP"), np) * p_obj_first);
  set(WordOrder::SOV, subj_left * m.p_split(s_np, np, cat("S\\NP\\NP")) * p_obj_first);
  set(WordOrder::OSV, subj_left * m.p_split(s_np, np, cat("S\\NP\\NP")) * p_subj_first);
  set(WordOrder::VSO, subj_right * m.p_split(s_fnp, cat("S/NP/NP"), np) * p_subj_first);
  set(WordOrder::VOS, subj_right * m.p_split(s_fnp, cat("S/NP/NP"), np) * p_obj_first);
  set(WordOrder::OVS, subj_right * m.p_split(s_fnp, np, cat("S/NP\\NP")) * p_obj_first);
  double total = 0;
  for (double v : out.raw) total += v;
  for (std::size_t i = 0; i < out.raw.size(); ++i) out.normalized[i] = total > 0 ? out.raw[i] / total : 1.0 / 6;
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon(const model::ModelState& model, const TagTable& tags) : model_(model) {
  for (const auto& [lf_text, ctx] : model.w().contexts()) {
    std::optional<lf::Term> term;
    for (const auto& [words, n] : ctx.counts) {
      if (n <= 0 || words.find(' ') != std::string::npos) continue;
      try {
        if (!term) term = lf::parse_lf(lf_text, tags);
      } catch (const Error&) {
        break;  // not an LF (e.g. padding outcomes in hand-built checkpoints)
      }
      meanings_[words].push_back(Meaning{lf_text, *term, lf::to_shell(*term, tags), n});
    }
  }
  double total = 0;
  for (const auto& [context, ctx] : model.t().contexts()) {
    auto it = ctx.counts.find(model::kLeafOutcome);
    if (it == ctx.counts.end() || it->second <= 0) continue;
    try {
      leaf_cats_.emplace_back(ccg::parse_category(context), it->second);
      total += it->second;
    } catch (const Error&) {
    }
  }
  for (auto& [c, p] : leaf_cats_) p /= total;
}

std::optional<lf::Term> Lexicon::predict_lf(const std::string& word) const {
  auto it = meanings_.find(word);
  if (it == meanings_.end()) return std::nullopt;
  const Meaning* best = nullptr;
  for (const Meaning& m : it->second)
    if (!best || m.count > best->count || (m.count == best->count && m.text < best->text)) best = &m;
  return best->term;
}

std::vector<std::pair<ccg::Category, double>> Lexicon::syncat_distribution(const std::string& word) const {
  std::vector<std::pair<ccg::Category, double>> out;
  auto it = meanings_.find(word);
  if (it == meanings_.end()) return out;
  std::vector<double> emit;  // p_w p_l per meaning
  for (const Meaning& m : it->second)
    emit.push_back(model_.p_words(word, 1, m.term) * model_.p_lf(m.term, m.shell));
  double total = 0;
  for (const auto& [c, p_syn] : leaf_cats_) {
    double sum = 0;
    for (std::size_t i = 0; i < it->second.size(); ++i) sum += emit[i] * model_.p_shell(it->second[i].shell, c);
    out.emplace_back(c, p_syn * sum);
    total += p_syn * sum;
  }
  if (total > 0)
    for (auto& [c, p] : out) p /= total;
  return out;
}

std::optional<ccg::Category> Lexicon::predict_syncat(const std::string& word) const {
  auto dist = syncat_distribution(word);
  const std::pair<ccg::Category, double>* best = nullptr;
  for (const auto& e : dist)
    if (!best || e.second > best->second ||
        (e.second == best->second && ccg::render(e.first) < ccg::render(best->first)))
      best = &e;
  if (!best) return std::nullopt;
  return best->first;
}

// ---------------------------------------------------------------------------
// Lexicon accuracy

std::vector<std::pair<std::string, std::size_t>> word_frequencies(const corpus::Corpus& corpus) {
  std::unordered_map<std::string, std::size_t> position;
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& dp : corpus.datapoints)
    for (const std::string& w : dp.tokens) {
      auto [it, fresh] = position.emplace(w, out.size());
      if (fresh) out.emplace_back(w, 0);
      ++out[it->second].second;
    }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

LexiconAccuracy lexicon_accuracy(const model::ModelState& model, const corpus::GoldLexicon& gold,
                                 const corpus::Corpus& corpus, std::size_t top_k) {
  Lexicon lexicon(model);
  LexiconAccuracy acc;
  auto freq = word_frequencies(corpus);
  if (freq.size() > top_k) freq.resize(top_k);
  std::size_t meaning = 0, syncat = 0, both = 0;
  for (const auto& [word, n] : freq) {
    auto g = gold.entries.find(word);
    if (g == gold.entries.end() || g->second.empty()) {
      acc.missing_gold.push_back(word);
      continue;
    }
    WordResult r;
    r.word = word;
    r.frequency = n;
    r.lf = lexicon.predict_lf(word);
    r.category = lexicon.predict_syncat(word);
    for (const corpus::LexicalEntry& e : g->second) {
      bool m = r.lf && lf::eta_eq(*r.lf, e.lf);
      bool c = r.category && *r.category == e.category;
      r.meaning_correct = r.meaning_correct || m;
      r.syncat_correct = r.syncat_correct || c;
      r.both_correct = r.both_correct || (m && c);
    }
    meaning += r.meaning_correct;
    syncat += r.syncat_correct;
    both += r.both_correct;
    acc.words.push_back(std::move(r));
  }
  if (!acc.words.empty()) {
    double d = static_cast<double>(acc.words.size());
    acc.meaning_pct = 100.0 * static_cast<double>(meaning) / d;
    acc.syncat_pct = 100.0 * static_cast<double>(syncat) / d;
    acc.both_pct = 100.0 * static_cast<double>(both) / d;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Critical examples

namespace {

bool complicating(const std::string& tag, const CriticalOptions& o) {
  for (const std::string& p : o.complicating_prefixes)
    if (tag.compare(0, p.size(), p) == 0) return true;
  return false;
}

bool is_transitive(const lf::Term& t, const TagTable& tags) {
  if (!t.is_application() || !t.head().is_constant() || t.head().constant().tag != "v") return false;
  if (t.args().size() != 2) return false;
  for (const lf::Term& a : t.args()) {
    bool entity = false;
    for (const types::SemanticType& ty : types::infer_types(a, tags)) entity = entity || types::render(ty) == "e";
    if (!entity) return false;
  }
  return true;
}

}  // namespace

std::vector<std::size_t> critical_examples(const corpus::Corpus& corpus, const CriticalOptions& options,
                                           const TagTable& tags) {
  std::vector<std::size_t> out;
  std::unordered_set<std::string> seen;
  for (const auto& dp : corpus.datapoints) {
    bool ok = is_transitive(dp.lf, tags);
    if (ok) {
      std::set<std::string> distinct(dp.tokens.begin(), dp.tokens.end());
      ok = distinct.size() == dp.tokens.size();
    }
    for (const std::string& tag : dp.tags) ok = ok && !complicating(tag, options);
    for (const lf::Constant& c : lf::constants(dp.lf)) ok = ok && !complicating(c.tag, options);
    for (const std::string& w : dp.tokens) ok = ok && seen.count(w);
    if (ok) out.push_back(dp.index);
    seen.insert(dp.tokens.begin(), dp.tokens.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zipf

double zipf_loss(const std::vector<double>& f, double a, double b) {
  double loss = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double r = std::log(f[i]) + a * std::log(static_cast<double>(i + 1) + b);
    loss += r * r;
  }
  return loss;
}

namespace {

constexpr double kMinA = 0.5, kMaxA = 3.0, kMinB = 0.0, kMaxB = 10.0;

// Best a for fixed b: log f_n = -a log(n+b) is linear in a.
double best_a(const std::vector<double>& f, double b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x = std::log(static_cast<double>(i + 1) + b);
    num -= std::log(f[i]) * x;
    den += x * x;
  }
  return std::clamp(den > 0 ? num / den : kMinA, kMinA, kMaxA);
}

double profile(const std::vector<double>& f, double b) { return zipf_loss(f, best_a(f, b), b); }

}  // namespace

ZipfFit zipf_fit(const std::vector<double>& frequencies) {
  std::vector<double> f;
  for (double x : frequencies)
    if (x > 0) f.push_back(x);
  if (f.size() < 10) throw DataError("a Zipf fit needs at least 10 distinct words, got " + std::to_string(f.size()));
  // Coarse grid, then golden-section search around the best grid point.
  const int steps = 200;
  double step = (kMaxB - kMinB) / steps;
  double best_b = kMinB, best = profile(f, kMinB);
  for (int i = 1; i <= steps; ++i) {
    double b = kMinB + step * i;
    double v = profile(f, b);
    if (v < best) best = v, best_b = b;
  }
  double lo = std::max(kMinB, best_b - step), hi = std::min(kMaxB, best_b + step);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = profile(f, x1), f2 = profile(f, x2);
  for (int it = 0; it < 100 && hi - lo > 1e-10; ++it) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo), f1 = profile(f, x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo), f2 = profile(f, x2);
    }
  }
  double b = (lo + hi) / 2;
  if (profile(f, b) > best) b = best_b;
  double a = best_a(f, b);
  return ZipfFit{a, b, zipf_loss(f, a, b)};
}

std::vector<double> relative_frequencies(const corpus::Corpus& corpus) {
  std::vector<double> out;
  double total = static_cast<double>(corpus.token_count());
  for (const auto& [w, n] : word_frequencies(corpus)) out.push_back(static_cast<double>(n) / total);
  return out;
}

// ---------------------------------------------------------------------------
// Diversity

DiversityStats diversity_stats(const corpus::Corpus& corpus) {
  DiversityStats s;
  std::unordered_set<std::string> before;  // types of earlier datapoints
  std::unordered_set<std::string> types;
  std::size_t new_tokens = 0;
  for (const auto& dp : corpus.datapoints) {
    for (const std::string& w : dp.tokens) {
      ++s.tokens;
      if (!before.count(w)) ++new_tokens;
      types.insert(w);
      s.type_token_curve.emplace_back(s.tokens, types.size());
    }
    before.insert(dp.tokens.begin(), dp.tokens.end());
  }
  s.types = types.size();
  s.repeats = s.tokens - s.types;
  if (s.tokens > 0) {
    s.pct_new_tokens = 100.0 * static_cast<double>(new_tokens) / static_cast<double>(s.tokens);
    s.pct_new_types = 100.0 * static_cast<double>(s.types) / static_cast<double>(s.tokens);
  }
  return s;
}

}  // namespace ccgboot::eval
