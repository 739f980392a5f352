// Acceptance suite: one PASS/FAIL line per criterion. The replication
// criterion needs the child-directed corpora, which are not bundled, and is
// not run here.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ccgboot/corpus.hpp"
#include "ccgboot/eval.hpp"
#include "ccgboot/forest.hpp"
#include "ccgboot/model.hpp"
#include "ccgboot/trainer.hpp"
#include "ccgboot/worked_example.hpp"
#include "oracles.hpp"

using namespace ccgboot;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

// 1. dp_posterior against long double arithmetic.
Outcome dp_exactness() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> count(0, 1e4), alpha(1e-3, 100), base(1e-15, 1);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    double nb = count(rng);
    double nab = std::uniform_real_distribution<double>(0, nb)(rng);
    double a = alpha(rng), h = base(rng);
    long double want = (static_cast<long double>(nab) + static_cast<long double>(a) * h) /
                       (static_cast<long double>(nb) + static_cast<long double>(a));
    double got = model::dp_posterior(nab, nb, a, h);
    worst = std::max(worst, static_cast<double>(std::fabs(got - want) / want));
  }
  return {worst <= 1e-12, "max relative error " + fmt(worst, 3) + " over 1000 cases"};
}

// 2. Worked example: listed factors, joint and posterior weight.
Outcome worked_example() {
  const std::vector<double> listed{0.388, 0.738, 0.66,  0.327, 0.912, 0.549, 0.989, 0.961, 0.012, 0.862,
                                   0.261, 0.994, 0.999, 0.486, 0.95,  0.994, 1.0,   0.015, 0.973};
  worked::Example ex = worked::build();
  auto factors = forest::tree_factors(*ex.reference, worked::tokens(), ex.model);
  bool factors_ok = factors.size() == listed.size() + 1 && std::fabs(factors[1].probability - 1) < 1e-8;
  for (std::size_t i = 0, k = 0; factors_ok && i < factors.size(); ++i) {
    if (i == 1) continue;
    factors_ok = std::fabs(factors[i].probability - listed[k++]) < 1e-8;
  }
  double joint = forest::tree_joint_probability(*ex.reference, worked::tokens(), ex.model);
  auto post = forest::posterior(ex.trees, worked::tokens(), ex.model);
  double total = std::exp(post.log_total);
  double weight = 0;
  for (std::size_t i = 0; i < ex.trees.size(); ++i)
    if (ex.trees[i] == ex.reference) weight = post.weights[i];
  bool ok = factors_ok && std::fabs(joint / 5.281e-7 - 1) <= 0.002 && std::fabs(total / 5.888e-7 - 1) < 1e-6 &&
            std::fabs(weight - 0.896) <= 0.001;
  return {ok, std::string(factors_ok ? "factors match" : "factor mismatch") + ", joint " + fmt(joint) + ", total " +
                  fmt(total) + ", weight " + fmt(weight)};
}

// 3. enumerate against the generate-and-filter oracle.
Outcome forest_oracle() {
  oracles::Oracle oracle;
  std::mt19937 rng(2025);
  int done = 0, mismatches = 0, nonempty = 0;
  while (done < 200) {
    lf::Term root = oracles::random_instance(rng);
    if (root.size() > 8) continue;
    std::size_t n = 1 + rng() % 3;
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < n; ++i) toks.push_back("w" + std::to_string(i));
    auto e = forest::enumerate(toks, root);
    std::set<std::string> got;
    std::function<std::string(const forest::ParseNode&)> key = [&](const forest::ParseNode& x) {
      std::string s = "(" + ccg::render(x.category) + " " + lf::render(x.lf) + " " + std::to_string(x.begin) + "-" +
                      std::to_string(x.end);
      if (!x.is_leaf()) s += " " + key(*x.left) + " " + key(*x.right);
      return s + ")";
    };
    for (const auto& t : e.trees) got.insert(key(*t));
    bool same = !e.overflow && got.size() == e.trees.size() && got == oracle.trees(n, root);
    mismatches += !same;
    nonempty += !got.empty();
    ++done;
  }
  return {mismatches == 0, std::to_string(200 - mismatches) + "/200 instances equal (" + std::to_string(nonempty) +
                               " with a nonempty forest)"};
}

train::TrainResult train_synthetic(corpus::WordOrder order, std::size_t distractors) {
  corpus::SynthSpec spec;
  spec.order = order;
  train::TrainConfig cfg;
  cfg.distractors = distractors;
  return train::train(corpus::synth_corpus(spec), cfg);
}

// 4. Word-order convergence for all six orders.
Outcome word_order_convergence(train::TrainResult& svo_run) {
  std::string detail;
  bool ok = true;
  for (corpus::WordOrder o : corpus::all_word_orders()) {
    train::TrainResult r = train_synthetic(o, 0);
    const eval::WordOrderScores& s = *r.log.back().scores;
    bool good = s.best() == o && s[o] > 0.9;
    if (o == corpus::WordOrder::SVO) {
      // argmax from the 150th datapoint on
      for (std::size_t i = 149; i < r.log.size(); ++i) good = good && r.log[i].scores->best() == o;
      svo_run = r;
    }
    ok = ok && good;
    detail += (detail.empty() ? "" : ", ") + corpus::to_string(o) + " " + fmt(s[o], 3);
  }
  return {ok, detail};
}

// 5. Distractors.
Outcome distractors() {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {2u, 6u}) {
    train::TrainResult r = train_synthetic(corpus::WordOrder::SVO, n);
    const eval::WordOrderScores& s = *r.log.back().scores;
    ok = ok && s.best() == corpus::WordOrder::SVO && s[corpus::WordOrder::SVO] > 0.6;
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " SVO " +
              fmt(s[corpus::WordOrder::SVO], 3) + " best " + corpus::to_string(s.best());
  }
  return {ok, detail};
}

// 6. Lexicon of the SVO run.
Outcome lexicon(const train::TrainResult& svo_run) {
  corpus::SynthSpec spec;
  model::ModelState m = svo_run.model;
  m.set_eval_alphas();
  auto acc = eval::lexicon_accuracy(m, corpus::synth_gold_lexicon(spec), corpus::synth_corpus(spec), 50);
  bool ok = acc.words.size() == 20 && acc.meaning_pct == 100 && acc.syncat_pct >= 90;
  return {ok, std::to_string(acc.words.size()) + " words, meaning " + fmt(acc.meaning_pct) + "%, category " +
                  fmt(acc.syncat_pct) + "%, both " + fmt(acc.both_pct) + "%"};
}

// 7. Zipf refit.
Outcome zipf() {
  auto f = oracles::sampled_zipf(1.4, 1.5, 11, 50000, 11);
  eval::ZipfFit fit = eval::zipf_fit(f);
  return {std::fabs(fit.a - 1.4) <= 0.05, "a " + fmt(fit.a) + ", b " + fmt(fit.b) + " from 50000 tokens"};
}

// 8. Diversity statistics on synthetic and random corpora.
Outcome diversity() {
  std::vector<corpus::Corpus> corpora;
  for (corpus::WordOrder o : corpus::all_word_orders()) {
    corpus::SynthSpec spec;
    spec.order = o;
    spec.seed = 100 + static_cast<unsigned>(o);
    corpora.push_back(corpus::synth_corpus(spec));
  }
  std::mt19937 rng(8);
  for (int k = 0; k < 50; ++k) {
    corpus::Corpus c;
    for (std::size_t i = 0, n = rng() % 40; i < n; ++i) {
      corpus::DataPoint dp{i, {}, lf::parse_lf("n|x"), {}};
      for (std::size_t j = 0, len = 1 + rng() % 7; j < len; ++j) dp.tokens.push_back("w" + std::to_string(rng() % 60));
      c.datapoints.push_back(std::move(dp));
    }
    corpora.push_back(std::move(c));
  }
  std::size_t bad = 0;
  for (const auto& c : corpora) {
    std::set<std::string> types;
    for (const auto& dp : c.datapoints) types.insert(dp.tokens.begin(), dp.tokens.end());
    eval::DiversityStats s = eval::diversity_stats(c);
    bool ok = s.repeats == c.token_count() - types.size() && s.type_token_curve.size() == c.token_count();
    std::size_t prev_tokens = 0, prev_types = 0;
    for (const auto& [t, ty] : s.type_token_curve) {
      ok = ok && t == prev_tokens + 1 && ty >= prev_types && ty - prev_types <= 1;
      prev_tokens = t;
      prev_types = ty;
    }
    bad += !ok;
  }
  return {bad == 0, std::to_string(corpora.size() - bad) + "/" + std::to_string(corpora.size()) + " corpora consistent"};
}

// 10. Two CLI runs with the same manifest give identical bytes.
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  fs::path dir = fs::temp_directory_path() / "ccgboot_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    std::string cmd = std::string(CCGBOOT_CLI) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  std::string d = dir.string();
  bool ok = run("synth --order SVO --sentences 150 --seed 5 -o " + d + "/syn");
  std::size_t files = 0, equal = 0;
  for (const char* run_dir : {"/a", "/b"}) {
    ok = ok && run("train -q --distractors 2 --snapshot-stride 1 --corpus " + d + "/syn/corpus.jsonl -o " + d + run_dir);
    ok = ok && run("corpus-stats --corpus " + d + "/syn/corpus.jsonl -o " + d + run_dir + "/stats");
    ok = ok && run("word-order --model " + d + "/a/model.json -o " + d + run_dir + "/wo");
  }
  for (const char* f : {"manifest.json", "curve.csv", "model.json", "stats/manifest.json", "stats/stats.json",
                        "stats/type_token.csv", "wo/manifest.json", "wo/word_order.json"}) {
    ++files;
    std::string a = slurp(dir / "a" / f), b = slurp(dir / "b" / f);
    equal += !a.empty() && a == b;
  }
  fs::remove_all(dir);
  return {ok && equal == files, std::to_string(equal) + "/" + std::to_string(files) + " output files identical"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& check) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  };
  train::TrainResult svo_run;
  report(1, "posterior exactness", dp_exactness);
  report(2, "worked example", worked_example);
  report(3, "forest oracle equivalence", forest_oracle);
  report(4, "word-order convergence", [&] { return word_order_convergence(svo_run); });
  report(5, "distractor robustness", distractors);
  report(6, "lexicon accuracy", [&] {
    if (svo_run.log.empty()) svo_run = train_synthetic(corpus::WordOrder::SVO, 0);
    return lexicon(svo_run);
  });
  report(7, "zipf refit", zipf);
  report(8, "diversity statistics", diversity);
  report(10, "determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
