#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "ccgboot/error.hpp"
#include "ccgboot/eval.hpp"
#include "oracles.hpp"

using namespace ccgboot;
using namespace ccgboot::eval;
using corpus::Corpus;
using corpus::DataPoint;

namespace {

lf::Term P(const std::string& s) { return lf::parse_lf(s); }
ccg::Category C(const std::string& s) { return ccg::parse_category(s); }

std::size_t idx(WordOrder o) { return static_cast<std::size_t>(o); }

// A lexical entry as seen by the model: word, LF, category.
void teach(model::ModelState& m, const std::string& word, const std::string& lf_text, const std::string& cat,
           double n = 5) {
  lf::Term t = P(lf_text);
  std::string shell = lf::render(lf::to_shell(t));
  m.w().observe(word, lf::render(t), n);
  m.l().observe(lf::render(t), shell, n);
  m.h().observe(shell, ccg::render_undirected(C(cat)), n);
  m.t().observe(model::kLeafOutcome, cat, n);
}

Corpus make_corpus(const std::vector<std::pair<std::vector<std::string>, std::string>>& rows) {
  Corpus c;
  for (const auto& [tokens, lf_text] : rows) c.datapoints.push_back(DataPoint{c.datapoints.size(), tokens, P(lf_text), {}});
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Word-order scores

TEST(WordOrderScores, UntrainedIsUniform) {
  for (bool eval_mode : {false, true}) {
    model::ModelState m;
    if (eval_mode) m.set_eval_alphas();
    WordOrderScores s = word_order_scores(m);
    double sum = 0;
    for (double v : s.normalized) {
      EXPECT_NEAR(v, 1.0 / 6, 1e-12);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

namespace {

// Each raw score from the table counts directly: two split factors and the
// verb shell under the transitive context.
std::array<double, 6> raw_oracle(const model::ModelState& m) {
  auto split = [&](const std::string& parent, const std::string& outcome) {
    const model::CondTable& t = m.t();
    return model::dp_posterior(t.count(outcome, parent), t.total(parent), t.alpha(), m.base_split(C(parent)));
  };
  auto shell = [&](const std::string& order) {
    lf::ShellTerm sh = lf::to_shell(P("L0.L1.v|x " + order));
    const model::CondTable& h = m.h();
    return model::dp_posterior(h.count(lf::render(sh), "S|NP|NP"), h.total("S|NP|NP"), h.alpha(), m.base_shell(sh));
  };
  std::array<double, 6> r{};
  r[idx(WordOrder::SVO)] = split("S", "NP S\\NP") * split("S\\NP", "S\\NP/NP NP") * shell("1 0");
  r[idx(WordOrder::SOV)] = split("S", "NP S\\NP") * split("S\\NP", "NP S\\NP\\NP") * shell("1 0");
  r[idx(WordOrder::OSV)] = split("S", "NP S\\NP") * split("S\\NP", "NP S\\NP\\NP") * shell("0 1");
  r[idx(WordOrder::VSO)] = split("S", "S/NP NP") * split("S/NP", "S/NP/NP NP") * shell("0 1");
  r[idx(WordOrder::VOS)] = split("S", "S/NP NP") * split("S/NP", "S/NP/NP NP") * shell("1 0");
  r[idx(WordOrder::OVS)] = split("S", "S/NP NP") * split("S/NP", "NP S/NP\\NP") * shell("1 0");
  return r;
}

model::ModelState random_word_order_model(std::mt19937& rng) {
  model::ModelState m;
  std::uniform_real_distribution<double> w(0, 4);
  const std::pair<const char*, const char*> splits[] = {
      {"S", "NP S\\NP"},           {"S", "S/NP NP"},          {"S\\NP", "S\\NP/NP NP"}, {"S\\NP", "NP S\\NP\\NP"},
      {"S/NP", "S/NP/NP NP"},      {"S/NP", "NP S/NP\\NP"},   {"S", "leaf"},            {"S\\NP", "leaf"}};
  for (const auto& [ctx, out] : splits)
    if (rng() % 4) m.t().observe(out, ctx, w(rng));
  for (const char* order : {"1 0", "0 1"})
    if (rng() % 4) m.h().observe(lf::render(lf::to_shell(P(std::string("L0.L1.v|x ") + order))), "S|NP|NP", w(rng));
  m.h().observe("entity", "S|NP|NP", w(rng));
  if (rng() % 2) m.set_eval_alphas();
  return m;
}

}  // namespace

TEST(WordOrderScores, MatchesTableOracle) {
  std::mt19937 rng(31);
  for (int i = 0; i < 200; ++i) {
    model::ModelState m = random_word_order_model(rng);
    WordOrderScores s = word_order_scores(m);
    auto want = raw_oracle(m);
    double total = 0;
    for (double v : want) total += v;
    double sum = 0;
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_NEAR(s.raw[k], want[k], 1e-15 + 1e-12 * want[k]);
      EXPECT_NEAR(s.normalized[k], want[k] / total, 1e-12);
      sum += s.normalized[k];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(WordOrderScores, SovAndOsvDifferOnlyInShell) {
  std::mt19937 rng(37);
  for (int i = 0; i < 50; ++i) {
    model::ModelState m = random_word_order_model(rng);
    WordOrderScores s = word_order_scores(m);
    double obj_first = m.p_shell(lf::to_shell(P("L0.L1.v|x 1 0")), C("S\\NP\\NP"));
    double subj_first = m.p_shell(lf::to_shell(P("L0.L1.v|x 0 1")), C("S\\NP\\NP"));
    EXPECT_NEAR(s.raw[idx(WordOrder::SOV)] / s.raw[idx(WordOrder::OSV)], obj_first / subj_first, 1e-12);
    EXPECT_NEAR(s.raw[idx(WordOrder::VOS)] / s.raw[idx(WordOrder::VSO)], obj_first / subj_first, 1e-12);
  }
}

TEST(WordOrderScores, BestIsArgmax) {
  model::ModelState m;
  m.t().observe("S\\NP/NP NP", "S\\NP", 10);
  m.t().observe("NP S\\NP", "S", 10);
  EXPECT_EQ(word_order_scores(m).best(), WordOrder::SVO);
}

// ---------------------------------------------------------------------------
// Lexicon

TEST(Lexicon, UnseenWordHasNoPrediction) {
  model::ModelState m;
  teach(m, "dog", "n|dog", "N");
  Lexicon lex(m);
  EXPECT_FALSE(lex.predict_lf("cat").has_value());
  EXPECT_FALSE(lex.predict_syncat("cat").has_value());
  ASSERT_TRUE(lex.predict_lf("dog").has_value());
  EXPECT_EQ(lf::render(*lex.predict_lf("dog")), "n|dog");
}

TEST(Lexicon, MeaningTieGoesToSmallerRendering) {
  model::ModelState m;
  m.w().observe("ball", "n|toy", 2);
  m.w().observe("ball", "n|ball", 2);
  m.w().observe("ball", "n|zebra", 1.5);
  EXPECT_EQ(lf::render(*Lexicon(m).predict_lf("ball")), "n|ball");
  m.w().observe("ball", "n|toy", 0.25);
  EXPECT_EQ(lf::render(*Lexicon(m).predict_lf("ball")), "n|toy");
}

TEST(Lexicon, MultiwordOutcomesAreNotWordMeanings) {
  model::ModelState m;
  m.w().observe("the dog", "det:art|the n|dog", 9);
  m.w().observe("dog", "n|dog", 1);
  EXPECT_EQ(lf::render(*Lexicon(m).predict_lf("dog")), "n|dog");
  EXPECT_FALSE(Lexicon(m).predict_lf("the dog").has_value());
}

TEST(Lexicon, WordSeenOnlyAsWholeUtteranceLeaf) {
  model::ModelState m;
  teach(m, "bye", "co|bye", "S", 1);
  auto c = Lexicon(m).predict_syncat("bye");
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(ccg::render(*c), "S");
}

TEST(Lexicon, SyncatDistributionFollowsDefinition) {
  model::ModelState m;
  teach(m, "dog", "n|dog", "N", 4);
  teach(m, "adam", "n:prop|adam", "NP", 3);
  teach(m, "runs", "L0.v|run-3s 0", "S\\NP", 2);
  m.w().observe("dog", "n:prop|dog", 1);  // a second meaning
  m.l().observe("n:prop|dog", "entity", 1);
  auto dist = Lexicon(m).syncat_distribution("dog");
  ASSERT_EQ(dist.size(), 3u);
  // p_syn from leaf counts 4:3:2; sum over the two meanings of p_w p_l p_h.
  std::map<std::string, double> want;
  double total = 0;
  for (const auto& [cat, leaf] : std::vector<std::pair<std::string, double>>{{"N", 4}, {"NP", 3}, {"S\\NP", 2}}) {
    double sum = 0;
    for (const char* meaning : {"n|dog", "n:prop|dog"}) {
      lf::Term t = P(meaning);
      lf::ShellTerm sh = lf::to_shell(t);
      sum += m.p_words("dog", 1, t) * m.p_lf(t, sh) * m.p_shell(sh, C(cat));
    }
    want[cat] = leaf / 9 * sum;
    total += want[cat];
  }
  for (const auto& [cat, p] : dist) EXPECT_NEAR(p, want[ccg::render(cat)] / total, 1e-12) << ccg::render(cat);
  EXPECT_EQ(ccg::render(*Lexicon(m).predict_syncat("dog")), "N");
}

namespace {

model::ModelState perfect_svo_model() {
  model::ModelState m;
  corpus::SynthSpec spec;
  for (const auto& [word, entries] : corpus::synth_gold_lexicon(spec).entries)
    teach(m, word, lf::render(entries[0].lf), ccg::render(entries[0].category));
  return m;
}

}  // namespace

TEST(LexiconAccuracy, AllCorrect) {
  corpus::SynthSpec spec;
  Corpus c = corpus::synth_corpus(spec);
  LexiconAccuracy acc = lexicon_accuracy(perfect_svo_model(), corpus::synth_gold_lexicon(spec), c);
  EXPECT_EQ(acc.words.size(), 20u);
  EXPECT_TRUE(acc.missing_gold.empty());
  EXPECT_DOUBLE_EQ(acc.meaning_pct, 100);
  EXPECT_DOUBLE_EQ(acc.syncat_pct, 100);
  EXPECT_DOUBLE_EQ(acc.both_pct, 100);
}

TEST(LexiconAccuracy, MeaningUpToEta) {
  model::ModelState m;
  teach(m, "runs", "v|run-3s", "S\\NP");
  corpus::GoldLexicon g;
  g.entries["runs"].push_back({P("L0.v|run-3s 0"), C("S\\NP")});
  Corpus c = make_corpus({{{"runs"}, "v|run-3s pro:per|you"}});
  auto acc = lexicon_accuracy(m, g, c);
  EXPECT_DOUBLE_EQ(acc.meaning_pct, 100);
}

TEST(LexiconAccuracy, MismatchCases) {
  model::ModelState m;
  teach(m, "in", "L0.prep|in 0", "NP/N");  // meaning right, category wrong
  teach(m, "dog", "n|dog", "N");
  m.w().observe("dog", "n|cat", 20);  // category right, meaning wrong
  teach(m, "you", "pro:per|you", "NP");
  corpus::GoldLexicon g;
  g.entries["in"].push_back({P("L0.prep|in 0"), C("S\\NP\\(S\\NP)/NP")});
  g.entries["dog"].push_back({P("n|dog"), C("N")});
  g.entries["you"].push_back({P("pro:per|you"), C("NP")});
  // Each half of "both" matches a different entry: not jointly correct.
  g.entries["you"].push_back({P("pro:per|me"), C("NP")});
  Corpus c = make_corpus({{{"in", "dog", "you"}, "n|dog"}});
  auto acc = lexicon_accuracy(m, g, c);
  ASSERT_EQ(acc.words.size(), 3u);
  std::map<std::string, WordResult> by;
  for (const auto& r : acc.words) by[r.word] = r;
  EXPECT_TRUE(by["in"].meaning_correct);
  EXPECT_FALSE(by["in"].syncat_correct);
  EXPECT_FALSE(by["in"].both_correct);
  EXPECT_FALSE(by["dog"].meaning_correct);
  EXPECT_TRUE(by["dog"].syncat_correct);
  EXPECT_TRUE(by["you"].both_correct);
  EXPECT_NEAR(acc.meaning_pct, 200.0 / 3, 1e-12);
  EXPECT_NEAR(acc.syncat_pct, 200.0 / 3, 1e-12);
  EXPECT_NEAR(acc.both_pct, 100.0 / 3, 1e-12);
}

TEST(LexiconAccuracy, BothRequiresOneEntry) {
  model::ModelState m;
  teach(m, "that", "pro:dem|that", "NP/N");
  corpus::GoldLexicon g;
  g.entries["that"].push_back({P("pro:dem|that"), C("NP")});
  g.entries["that"].push_back({P("L0.pro:det|that 0"), C("NP/N")});
  auto acc = lexicon_accuracy(m, g, make_corpus({{{"that"}, "pro:dem|that"}}));
  ASSERT_EQ(acc.words.size(), 1u);
  EXPECT_TRUE(acc.words[0].meaning_correct);
  EXPECT_TRUE(acc.words[0].syncat_correct);
  EXPECT_FALSE(acc.words[0].both_correct);
}

TEST(LexiconAccuracy, MissingGoldIsReportedNotScored) {
  model::ModelState m;
  teach(m, "dog", "n|dog", "N");
  corpus::GoldLexicon g;
  g.entries["dog"].push_back({P("n|dog"), C("N")});
  auto acc = lexicon_accuracy(m, g, make_corpus({{{"a", "dog"}, "det:art|a n|dog"}}));
  EXPECT_EQ(acc.missing_gold, std::vector<std::string>{"a"});
  EXPECT_EQ(acc.words.size(), 1u);
  EXPECT_DOUBLE_EQ(acc.both_pct, 100);
}

TEST(WordFrequencies, TiesKeepFirstOccurrence) {
  Corpus c = make_corpus({{{"b", "a"}, "n|x"}, {{"c", "a"}, "n|x"}, {{"d", "c"}, "n|x"}});
  auto f = word_frequencies(c);
  std::vector<std::pair<std::string, std::size_t>> want{{"a", 2}, {"c", 2}, {"b", 1}, {"d", 1}};
  EXPECT_EQ(f, want);
  model::ModelState m;
  corpus::GoldLexicon g;
  auto acc = lexicon_accuracy(m, g, c, 3);
  EXPECT_EQ(acc.missing_gold, (std::vector<std::string>{"a", "c", "b"}));
}

// ---------------------------------------------------------------------------
// Critical examples

TEST(CriticalExamples, SingleTransitiveSentence) {
  Corpus c = make_corpus({{{"adam", "sees", "eve"}, "v|see-3s n:prop|adam n:prop|eve"}});
  EXPECT_TRUE(critical_examples(c).empty());
}

TEST(CriticalExamples, Criteria) {
  Corpus c = make_corpus({
      {{"adam", "sees", "eve", "the", "dog", "runs", "really", "you"}, "n|x"},
      {{"adam", "sees", "eve"}, "v|see-3s n:prop|adam n:prop|eve"},               // 1: yes
      {{"adam", "sees", "the", "dog"}, "v|see-3s n:prop|adam (det:art|the n|dog)"},  // 2: yes
      {{"adam", "runs"}, "v|run-3s n:prop|adam"},                                    // intransitive
      {{"eve", "sees", "eve"}, "v|see-3s n:prop|eve n:prop|eve"},                    // repeated token
      {{"adam", "sees", "dog"}, "v|see-3s n:prop|adam n|dog"},                       // object not an entity
      {{"adam", "really", "sees", "eve"}, "adv|really (v|see-3s n:prop|adam n:prop|eve)"},
      {{"you", "sees", "cats"}, "v|see-3s pro:per|you n:prop|cats"},  // new word
      {{"you", "sees", "eve"}, "v|see-3s pro:per|you n:prop|eve"},     // 8: yes
  });
  c.datapoints[6].tags = {"n:prop", "adv", "v", "n:prop"};
  EXPECT_EQ(critical_examples(c), (std::vector<std::size_t>{1, 2, 8}));
  CriticalOptions none;
  none.complicating_prefixes.clear();
  c.datapoints[6].lf = P("v|see-3s n:prop|adam n:prop|eve");
  EXPECT_EQ(critical_examples(c, none), (std::vector<std::size_t>{1, 2, 6, 8}));
  EXPECT_EQ(critical_examples(c), (std::vector<std::size_t>{1, 2, 8}));
}

namespace {

const std::set<std::string> kEntityTags{"n:prop", "pro:per", "pro:dem", "pro:int"};

bool naive_entity(const lf::Term& t) {
  if (t.is_constant()) return kEntityTags.count(t.constant().tag) > 0;
  return t.is_application() && t.head().is_constant() && t.head().constant().tag.rfind("det", 0) == 0 &&
         t.args().size() == 1 && t.args()[0].is_constant() && t.args()[0].constant().tag == "n";
}

bool naive_critical(const Corpus& c, std::size_t i) {
  const DataPoint& dp = c.datapoints[i];
  const lf::Term& t = dp.lf;
  if (!t.is_application() || !t.head().is_constant() || t.head().constant().tag != "v") return false;
  if (t.args().size() != 2 || !naive_entity(t.args()[0]) || !naive_entity(t.args()[1])) return false;
  for (std::size_t a = 0; a < dp.tokens.size(); ++a)
    for (std::size_t b = a + 1; b < dp.tokens.size(); ++b)
      if (dp.tokens[a] == dp.tokens[b]) return false;
  for (const auto& tag : dp.tags)
    if (tag.rfind("adv", 0) == 0 || tag.rfind("prep", 0) == 0) return false;
  for (const auto& tok : dp.tokens) {
    bool earlier = false;
    for (std::size_t j = 0; j < i && !earlier; ++j)
      for (const auto& w : c.datapoints[j].tokens) earlier = earlier || w == tok;
    if (!earlier) return false;
  }
  return true;
}

}  // namespace

TEST(CriticalExamples, MatchesNaiveOracleOnRandomCorpora) {
  std::mt19937 rng(41);
  const std::vector<std::string> args{"n:prop|adam", "pro:per|you", "det:art|the n|dog", "n|dog", "pro:int|who"};
  const std::vector<std::string> words{"w0", "w1", "w2", "w3", "w4", "w5", "w6", "w7"};
  const std::vector<std::string> tags{"n", "v", "adv", "prep", "det:art", "n:prop"};
  for (int round = 0; round < 50; ++round) {
    Corpus c;
    std::size_t n = 1 + rng() % 40;
    for (std::size_t i = 0; i < n; ++i) {
      std::string lf_text;
      switch (rng() % 4) {
        case 0: lf_text = "v|run " + args[rng() % 2]; break;
        case 1: lf_text = "n|dog"; break;
        default: lf_text = "v|see (" + args[rng() % args.size()] + ") (" + args[rng() % args.size()] + ")";
      }
      DataPoint dp{i, {}, P(lf_text), {}};
      std::size_t len = 1 + rng() % 4;
      for (std::size_t k = 0; k < len; ++k) {
        dp.tokens.push_back(words[rng() % words.size()]);
        dp.tags.push_back(rng() % 6 ? tags[rng() % 2] : tags[rng() % tags.size()]);
      }
      c.datapoints.push_back(std::move(dp));
    }
    std::vector<std::size_t> want;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (naive_critical(c, i)) want.push_back(i);
    EXPECT_EQ(critical_examples(c), want);
  }
}

// ---------------------------------------------------------------------------
// Zipf


TEST(Zipf, RecoversExponent) {
  // Over 11 ranks 1/(n+1.5)^1.4 sums to 0.988, so the sampled frequencies
  // stay close to the unnormalized law.
  for (unsigned seed : {1u, 2u, 3u}) {
    auto f = oracles::sampled_zipf(1.4, 1.5, 11, 50000, seed);
    ZipfFit fit = zipf_fit(f);
    EXPECT_NEAR(fit.a, 1.4, 0.05) << seed;
  }
}

TEST(Zipf, ExactLawIsRecovered) {
  std::vector<double> f;
  for (int n = 1; n <= 30; ++n) f.push_back(std::pow(n + 2.25, -1.7));
  ZipfFit fit = zipf_fit(f);
  EXPECT_NEAR(fit.a, 1.7, 1e-6);
  EXPECT_NEAR(fit.b, 2.25, 1e-5);
  EXPECT_LT(fit.loss, 1e-12);
}

TEST(Zipf, FitIsLocalMinimum) {
  auto f = oracles::sampled_zipf(1.4, 1.5, 11, 50000, 9);
  ZipfFit fit = zipf_fit(f);
  EXPECT_DOUBLE_EQ(fit.loss, zipf_loss(f, fit.a, fit.b));
  for (double da : {-1e-3, 1e-3}) EXPECT_LE(fit.loss, zipf_loss(f, fit.a + da, fit.b));
  for (double db : {-1e-3, 1e-3})
    if (fit.b + db >= 0) EXPECT_LE(fit.loss, zipf_loss(f, fit.a, fit.b + db));
}

TEST(Zipf, DegenerateInputThrows) {
  EXPECT_THROW(zipf_fit({}), DataError);
  EXPECT_THROW(zipf_fit({0.5, 0.3, 0.2}), DataError);
  Corpus c = make_corpus({{{"a", "b", "a"}, "n|x"}});
  EXPECT_THROW(zipf_fit(relative_frequencies(c)), DataError);
}

TEST(Zipf, RelativeFrequencies) {
  Corpus c = make_corpus({{{"a", "b", "a"}, "n|x"}, {{"c", "a"}, "n|x"}});
  EXPECT_EQ(relative_frequencies(c), (std::vector<double>{0.6, 0.2, 0.2}));
}

// ---------------------------------------------------------------------------
// Diversity

TEST(Diversity, DistinctSingleTokenUtterances) {
  Corpus c = make_corpus({{{"a"}, "n|x"}, {{"b"}, "n|x"}, {{"c"}, "n|x"}, {{"d"}, "n|x"}});
  DiversityStats s = diversity_stats(c);
  EXPECT_EQ(s.repeats, 0u);
  EXPECT_DOUBLE_EQ(s.pct_new_tokens, 100);
  EXPECT_DOUBLE_EQ(s.pct_new_types, 100);
}

TEST(Diversity, EmptyCorpus) {
  DiversityStats s = diversity_stats(Corpus{});
  EXPECT_EQ(s.tokens, 0u);
  EXPECT_EQ(s.repeats, 0u);
  EXPECT_TRUE(s.type_token_curve.empty());
}

TEST(Diversity, NewTokensAreCountedAgainstEarlierDatapoints) {
  // "b" twice in the second datapoint: both occurrences are new.
  Corpus c = make_corpus({{{"a", "a"}, "n|x"}, {{"b", "a", "b"}, "n|x"}});
  DiversityStats s = diversity_stats(c);
  EXPECT_EQ(s.tokens, 5u);
  EXPECT_EQ(s.types, 2u);
  EXPECT_EQ(s.repeats, 3u);
  EXPECT_DOUBLE_EQ(s.pct_new_tokens, 80);
  EXPECT_DOUBLE_EQ(s.pct_new_types, 40);
}

TEST(Diversity, SelfConsistentOnRandomCorpora) {
  std::mt19937 rng(43);
  for (int round = 0; round < 100; ++round) {
    Corpus c;
    std::size_t n = rng() % 30;
    std::set<std::string> types;
    std::size_t tokens = 0;
    for (std::size_t i = 0; i < n; ++i) {
      DataPoint dp{i, {}, P("n|x"), {}};
      for (std::size_t k = 0, len = 1 + rng() % 6; k < len; ++k) dp.tokens.push_back("w" + std::to_string(rng() % 25));
      types.insert(dp.tokens.begin(), dp.tokens.end());
      tokens += dp.tokens.size();
      c.datapoints.push_back(std::move(dp));
    }
    DiversityStats s = diversity_stats(c);
    EXPECT_EQ(s.tokens, tokens);
    EXPECT_EQ(s.types, types.size());
    EXPECT_EQ(s.repeats, tokens - types.size());
    ASSERT_EQ(s.type_token_curve.size(), tokens);
    std::pair<std::size_t, std::size_t> prev{0, 0};
    for (const auto& p : s.type_token_curve) {
      EXPECT_EQ(p.first, prev.first + 1);
      EXPECT_GE(p.second, prev.second);
      EXPECT_LE(p.second - prev.second, 1u);
      prev = p;
    }
    if (tokens) EXPECT_EQ(s.type_token_curve.back().second, types.size());
  }
}
