#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccgboot/corpus.hpp"
#include "ccgboot/error.hpp"
#include "ccgboot/eval.hpp"
#include "ccgboot/forest.hpp"
#include "ccgboot/trainer.hpp"
#include "ccgboot/worked_example.hpp"

#ifndef CCGBOOT_VERSION
#define CCGBOOT_VERSION "dev"
#endif

using namespace ccgboot;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

// Fixed-precision number text so outputs compare byte for byte.
std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

// Collects the run configuration and input hashes; written next to the outputs.
class Manifest {
 public:
  explicit Manifest(std::string command) { j_ = {{"command", std::move(command)}, {"version", CCGBOOT_VERSION}}; }

  void config(const std::string& key, json value) { j_["config"][key] = std::move(value); }
  void input(const std::string& role, const std::string& path) {
    j_["inputs"][role] = {{"path", path}, {"fnv1a64", hex(fnv1a(read_file(path)))}};
  }
  void output(const std::string& name) { j_["outputs"].push_back(name); }

  void write(const fs::path& dir) const { write_text(dir / "manifest.json", j_.dump(2) + "\n"); }

 private:
  json j_;
};

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

json scores_json(const eval::WordOrderScores& s) {
  json raw, norm;
  const auto& orders = corpus::all_word_orders();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    raw[corpus::to_string(orders[i])] = s.raw[i];
    norm[corpus::to_string(orders[i])] = s.normalized[i];
  }
  return {{"raw", raw}, {"normalized", norm}, {"best", corpus::to_string(s.best())}};
}

// Prints to stdout, or writes into the output directory when one is given.
void emit(const std::string& out_dir, const std::string& name, const std::string& text, Manifest& manifest) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::path dir = prepare_dir(out_dir);
  write_text(dir / name, text);
  manifest.output(name);
  manifest.write(dir);
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string order = "SVO";
  std::size_t sentences = 300;
  std::uint64_t seed = 7;
  double zipf_a = 1.0, zipf_b = 1.0;
  std::string out_dir;
};

int cmd_synth(const SynthArgs& a) {
  corpus::SynthSpec spec;
  spec.order = corpus::parse_word_order(a.order);
  spec.sentences = a.sentences;
  spec.seed = a.seed;
  spec.zipf_a = a.zipf_a;
  spec.zipf_b = a.zipf_b;
  corpus::Corpus c = corpus::synth_corpus(spec);
  fs::path dir = prepare_dir(a.out_dir);
  corpus::save_corpus((dir / "corpus.jsonl").string(), c);

  std::ostringstream gold;
  for (const auto& [word, entries] : corpus::synth_gold_lexicon(spec).entries) {
    gold << word << ":";
    for (std::size_t i = 0; i < entries.size(); ++i)
      gold << (i ? "," : "") << lf::render(entries[i].lf) << " || " << ccg::render(entries[i].category);
    gold << "\n";
  }
  write_text(dir / "gold.txt", gold.str());

  Manifest m("synth");
  m.config("order", a.order);
  m.config("sentences", a.sentences);
  m.config("seed", a.seed);
  m.config("zipf_a", a.zipf_a);
  m.config("zipf_b", a.zipf_b);
  m.output("corpus.jsonl");
  m.output("gold.txt");
  m.write(dir);
  std::cerr << "wrote " << c.size() << " datapoints, " << c.token_count() << " tokens to " << dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string corpus;
  bool filter_co = false;
  std::string out_dir;
  std::string init;
  std::size_t distractors = 0;
  bool keep_duplicates = false;
  std::optional<double> alpha_t, alpha_w, alpha_l, alpha_h;
  std::size_t max_trees = 5000;
  std::size_t max_span = 3;
  std::size_t snapshot_stride = 1;
  std::string x_axis = "utterances";
  bool snapshot_training_alphas = false;
  bool quiet = false;
};

int cmd_train(const TrainArgs& a) {
  corpus::LoadOptions lo;
  lo.filter_co = a.filter_co;
  corpus::Corpus c = corpus::load_corpus(a.corpus, lo);

  model::ModelState initial = a.init.empty() ? model::ModelState{} : model::ModelState::load(a.init);
  model::Alphas alphas = initial.config().training;
  if (a.alpha_t) alphas.t = *a.alpha_t;
  if (a.alpha_w) alphas.w = *a.alpha_w;
  if (a.alpha_l) alphas.l = *a.alpha_l;
  if (a.alpha_h) alphas.h = *a.alpha_h;
  initial.set_training_alphas();
  initial.set_training_override(alphas);

  train::TrainConfig cfg;
  cfg.distractors = a.distractors;
  cfg.dedupe_distractors = !a.keep_duplicates;
  cfg.limits.max_trees = a.max_trees;
  cfg.limits.max_span = a.max_span;
  cfg.snapshot_stride = a.snapshot_stride;
  cfg.snapshot_eval_alphas = !a.snapshot_training_alphas;

  train::Progress progress;
  if (!a.quiet)
    progress = [&](const train::LogRow& row) {
      if ((row.step.index + 1) % 500 == 0) std::cerr << "  " << row.step.index + 1 << "/" << c.size() << "\n";
    };
  train::TrainResult r = train::train(c, cfg, std::move(initial), progress);

  fs::path dir = prepare_dir(a.out_dir);
  std::ostringstream csv;
  bool tokens = a.x_axis == "tokens";
  csv << "index" << (tokens ? ",tokens" : "") << ",n_trees,skipped";
  for (auto o : corpus::all_word_orders()) csv << "," << corpus::to_string(o);
  csv << "\n";
  for (const auto& row : r.log) {
    if (!row.scores) continue;
    csv << row.step.index;
    if (tokens) csv << "," << row.tokens_seen;
    csv << "," << row.step.trees << "," << (row.step.skipped ? 1 : 0);
    for (double v : row.scores->normalized) csv << "," << num(v);
    csv << "\n";
  }
  write_text(dir / "curve.csv", csv.str());
  r.model.save((dir / "model.json").string());

  Manifest m("train");
  m.input("corpus", a.corpus);
  if (!a.init.empty()) m.input("init", a.init);
  m.config("filter_co", a.filter_co);
  m.config("distractors", a.distractors);
  m.config("dedupe_distractors", cfg.dedupe_distractors);
  m.config("alphas", {{"t", alphas.t}, {"h", alphas.h}, {"l", alphas.l}, {"w", alphas.w}, {"root", alphas.root}});
  m.config("max_trees", a.max_trees);
  m.config("max_span", a.max_span);
  m.config("snapshot_stride", a.snapshot_stride);
  m.config("snapshot_alphas", cfg.snapshot_eval_alphas ? "eval" : "training");
  m.config("x_axis", a.x_axis);
  m.output("curve.csv");
  m.output("model.json");
  m.write(dir);

  if (!a.quiet) {
    std::cerr << "trained on " << c.size() << " datapoints (" << r.skipped << " skipped)\n";
    if (!r.log.empty() && r.log.back().scores)
      std::cerr << "final word order: " << corpus::to_string(r.log.back().scores->best()) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_word_order(const std::string& model_path, const std::string& out_dir) {
  model::ModelState m = model::ModelState::load(model_path);
  m.set_eval_alphas();
  Manifest man("word-order");
  man.input("model", model_path);
  emit(out_dir, "word_order.json", scores_json(eval::word_order_scores(m)).dump(2) + "\n", man);
  return 0;
}

struct EvalLexiconArgs {
  std::string model, gold, corpus;
  std::size_t top_k = 50;
  bool lenient = false;
  bool filter_co = false;
  std::string out_dir;
};

int cmd_eval_lexicon(const EvalLexiconArgs& a) {
  model::ModelState m = model::ModelState::load(a.model);
  m.set_eval_alphas();
  corpus::GoldLexicon gold = corpus::load_gold_lexicon(a.gold, a.lenient);
  corpus::LoadOptions lo;
  lo.filter_co = a.filter_co;
  corpus::Corpus c = corpus::load_corpus(a.corpus, lo);
  eval::LexiconAccuracy acc = eval::lexicon_accuracy(m, gold, c, a.top_k);

  json words = json::array();
  for (const auto& w : acc.words)
    words.push_back({{"word", w.word},
                     {"frequency", w.frequency},
                     {"lf", w.lf ? json(lf::render(*w.lf)) : json(nullptr)},
                     {"category", w.category ? json(ccg::render(*w.category)) : json(nullptr)},
                     {"meaning_correct", w.meaning_correct},
                     {"syncat_correct", w.syncat_correct},
                     {"both_correct", w.both_correct}});
  json out{{"meaning_pct", acc.meaning_pct},
           {"syncat_pct", acc.syncat_pct},
           {"both_pct", acc.both_pct},
           {"scored", acc.words.size()},
           {"missing_gold", acc.missing_gold},
           {"rejected_gold_entries", gold.rejected},
           {"words", words}};
  for (const auto& w : acc.missing_gold) std::cerr << "no gold entry for '" << w << "'\n";

  Manifest man("eval-lexicon");
  man.input("model", a.model);
  man.input("gold", a.gold);
  man.input("corpus", a.corpus);
  man.config("top_k", a.top_k);
  man.config("lenient", a.lenient);
  man.config("filter_co", a.filter_co);
  emit(a.out_dir, "lexicon.json", out.dump(2) + "\n", man);
  return 0;
}

int cmd_corpus_stats(const std::string& path, bool filter_co, const std::string& out_dir) {
  corpus::LoadOptions lo;
  lo.filter_co = filter_co;
  corpus::Corpus c = corpus::load_corpus(path, lo);
  eval::DiversityStats d = eval::diversity_stats(c);
  json zipf = nullptr;
  std::vector<double> freq = eval::relative_frequencies(c);
  if (freq.size() >= 10) {
    eval::ZipfFit f = eval::zipf_fit(freq);
    zipf = {{"a", f.a}, {"b", f.b}, {"loss", f.loss}};
  }
  json out{{"utterances", c.size()},
           {"tokens", d.tokens},
           {"types", d.types},
           {"word_repeats", d.repeats},
           {"pct_new_tokens", d.pct_new_tokens},
           {"pct_new_types", d.pct_new_types},
           {"critical_examples", eval::critical_examples(c).size()},
           {"zipf", zipf}};
  Manifest man("corpus-stats");
  man.input("corpus", path);
  man.config("filter_co", filter_co);
  if (!out_dir.empty()) {
    std::ostringstream curve;
    curve << "tokens,types\n";
    for (const auto& [t, ty] : d.type_token_curve) curve << t << "," << ty << "\n";
    write_text(prepare_dir(out_dir) / "type_token.csv", curve.str());
    man.output("type_token.csv");
  }
  emit(out_dir, "stats.json", out.dump(2) + "\n", man);
  return 0;
}

struct ParseArgs {
  std::string model;
  std::string utterance;
  std::string lf;
  std::size_t top = 5;
  std::size_t max_trees = 5000;
  std::size_t max_span = 3;
  std::string out_dir;
};

int cmd_parse(const ParseArgs& a) {
  model::ModelState m = model::ModelState::load(a.model);
  m.set_eval_alphas();
  std::vector<std::string> tokens;
  std::istringstream in(a.utterance);
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) throw UsageError("empty utterance");
  lf::Term root = lf::parse_lf(a.lf);
  forest::ForestLimits limits;
  limits.max_trees = a.max_trees;
  limits.max_span = a.max_span;
  forest::Enumeration e = forest::enumerate(tokens, root, limits);
  json out{{"tokens", tokens}, {"lf", lf::render(root)}, {"n_trees", e.trees.size()}, {"overflow", e.overflow}};
  out["trees"] = json::array();
  if (!e.trees.empty()) {
    forest::Posterior p = forest::posterior(e.trees, tokens, m);
    std::vector<std::size_t> order(e.trees.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return p.weights[x] > p.weights[y]; });
    out["total_probability"] = std::exp(p.log_total);
    for (std::size_t k = 0; k < std::min(a.top, order.size()); ++k) {
      json t = forest::tree_to_json(*e.trees[order[k]], tokens, m);
      t["weight"] = p.weights[order[k]];
      t["joint"] = std::exp(p.log_joint[order[k]]);
      out["trees"].push_back(std::move(t));
    }
  }
  Manifest man("parse");
  man.input("model", a.model);
  man.config("utterance", a.utterance);
  man.config("lf", a.lf);
  man.config("top", a.top);
  man.config("max_trees", a.max_trees);
  man.config("max_span", a.max_span);
  emit(a.out_dir, "parse.json", out.dump(2) + "\n", man);
  return 0;
}

int cmd_worked_example(const std::string& out_dir) {
  worked::Example ex = worked::build();
  fs::path dir = prepare_dir(out_dir);
  ex.model.save((dir / "model.json").string());
  json summary{{"tokens", worked::tokens()},
               {"lf", lf::render(worked::root_lf())},
               {"n_trees", ex.trees.size()},
               {"reference_joint", ex.reference_joint},
               {"total", ex.total},
               {"reference_weight", ex.reference_weight}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  Manifest man("worked-example");
  man.output("model.json");
  man.output("summary.json");
  man.write(dir);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic bootstrapping of CCG word order and lexicon from utterance/meaning pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CCGBOOT_VERSION);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic corpus and its gold lexicon");
  s->add_option("--order", synth.order, "Word order: SOV SVO VSO OSV OVS VOS")
      ->check(CLI::IsMember({"SOV", "SVO", "VSO", "OSV", "OVS", "VOS"}));
  s->add_option("--sentences", synth.sentences, "Number of datapoints");
  s->add_option("--seed", synth.seed, "Random seed");
  s->add_option("--zipf-a", synth.zipf_a, "Within-class Zipf exponent")->check(CLI::PositiveNumber);
  s->add_option("--zipf-b", synth.zipf_b, "Within-class Zipf offset");
  s->add_option("-o,--out-dir", synth.out_dir, "Output directory")->required();

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train on a corpus in one ordered pass");
  t->add_option("--corpus", tr.corpus, "Corpus (JSONL)")->required();
  t->add_flag("--filter-co", tr.filter_co, "Drop tokens tagged co");
  t->add_option("-o,--out-dir", tr.out_dir, "Output directory")->required();
  t->add_option("--init", tr.init, "Start from this checkpoint");
  t->add_option("--distractors", tr.distractors, "Distractor LFs per datapoint");
  t->add_flag("--keep-duplicate-distractors", tr.keep_duplicates, "Do not merge distractors equal to another candidate");
  t->add_option("--alpha-t", tr.alpha_t, "Training concentration of p_t (default 10)")->check(CLI::PositiveNumber);
  t->add_option("--alpha-w", tr.alpha_w, "Training concentration of p_w (default 0.25)")->check(CLI::PositiveNumber);
  t->add_option("--alpha-l", tr.alpha_l, "Training concentration of p_l (default 1)")->check(CLI::PositiveNumber);
  t->add_option("--alpha-h", tr.alpha_h, "Training concentration of p_h (default 1)")->check(CLI::PositiveNumber);
  t->add_option("--max-trees", tr.max_trees, "Skip LFs whose forest exceeds this many trees")
      ->check(CLI::PositiveNumber);
  t->add_option("--max-span", tr.max_span, "Longest multiword leaf")->check(CLI::PositiveNumber);
  t->add_option("--snapshot-stride", tr.snapshot_stride, "Word-order snapshot every N datapoints (0: none)");
  t->add_option("--x-axis", tr.x_axis, "Curve x axis")->check(CLI::IsMember({"utterances", "tokens"}));
  t->add_flag("--snapshot-training-alphas", tr.snapshot_training_alphas,
              "Score snapshots under the training alphas instead of the evaluation ones");
  t->add_flag("-q,--quiet", tr.quiet, "No progress output");

  std::string wo_model, wo_out;
  auto* w = app.add_subcommand("word-order", "Six-way word-order scores of a checkpoint");
  w->add_option("--model", wo_model, "Checkpoint")->required();
  w->add_option("-o,--out-dir", wo_out, "Output directory (default: stdout)");

  EvalLexiconArgs el;
  auto* l = app.add_subcommand("eval-lexicon", "Meaning and category accuracy of the most frequent words");
  l->add_option("--model", el.model, "Checkpoint")->required();
  l->add_option("--gold", el.gold, "Gold lexicon")->required();
  l->add_option("--corpus", el.corpus, "Corpus used to rank words")->required();
  l->add_option("--top-k", el.top_k, "Number of words");
  l->add_flag("--lenient", el.lenient, "Skip unparseable gold entries");
  l->add_flag("--filter-co", el.filter_co, "Drop tokens tagged co");
  l->add_option("-o,--out-dir", el.out_dir, "Output directory (default: stdout)");

  std::string cs_corpus, cs_out;
  bool cs_filter = false;
  auto* cs = app.add_subcommand("corpus-stats", "Corpus size, diversity, critical examples and Zipf fit");
  cs->add_option("--corpus", cs_corpus, "Corpus (JSONL)")->required();
  cs->add_flag("--filter-co", cs_filter, "Drop tokens tagged co");
  cs->add_option("-o,--out-dir", cs_out, "Output directory (default: stdout)");

  ParseArgs pa;
  auto* p = app.add_subcommand("parse", "Scored derivations of one utterance and LF");
  p->add_option("--model", pa.model, "Checkpoint")->required();
  p->add_option("--utterance", pa.utterance, "Space-separated tokens")->required();
  p->add_option("--lf", pa.lf, "Logical form")->required();
  p->add_option("--top", pa.top, "Trees to print");
  p->add_option("--max-trees", pa.max_trees, "Forest size limit")->check(CLI::PositiveNumber);
  p->add_option("--max-span", pa.max_span, "Longest multiword leaf")->check(CLI::PositiveNumber);
  p->add_option("-o,--out-dir", pa.out_dir, "Output directory (default: stdout)");

  std::string we_out;
  auto* we = app.add_subcommand("worked-example", "Write the checkpoint of the 'you lost a pencil' example");
  we->add_option("-o,--out-dir", we_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*s) return cmd_synth(synth);
    if (*t) return cmd_train(tr);
    if (*w) return cmd_word_order(wo_model, wo_out);
    if (*l) return cmd_eval_lexicon(el);
    if (*cs) return cmd_corpus_stats(cs_corpus, cs_filter, cs_out);
    if (*p) return cmd_parse(pa);
    if (*we) return cmd_worked_example(we_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
