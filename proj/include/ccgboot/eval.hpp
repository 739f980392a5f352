#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccgboot/corpus.hpp"
#include "ccgboot/model.hpp"

namespace ccgboot::eval {

using corpus::WordOrder;

struct WordOrderScores {
  // Indexed like corpus::all_word_orders().
  std::array<double, 6> raw{};
  std::array<double, 6> normalized{};

  double operator[](WordOrder o) const { return normalized[static_cast<std::size_t>(o)]; }
  WordOrder best() const;
};

// Probability of each transitive word order as the product of the two split
// probabilities building the clause and the verb's shell given its category.
// Uses the model's current alphas.
WordOrderScores word_order_scores(const model::ModelState& model);

// Read-only view of a model's lexicon: meanings and categories of single words.
class Lexicon {
 public:
  explicit Lexicon(const model::ModelState& model, const TagTable& tags = TagTable::builtin());

  // LF with the largest count n(word, m) in p_w; ties go to the smaller
  // rendering. Empty if the word was never observed.
  std::optional<lf::Term> predict_lf(const std::string& word) const;

  // argmax_s p(s | word), with p(s | word) proportional to
  // p_syn(s) * sum_m p_w(word | m) p_l(m | shell(m)) p_h(shell(m) | s),
  // and p_syn(s) the leaf counts of s in p_t.
  std::optional<ccg::Category> predict_syncat(const std::string& word) const;

  // Normalized p(s | word) over the leaf categories.
  std::vector<std::pair<ccg::Category, double>> syncat_distribution(const std::string& word) const;

 private:
  struct Meaning {
    std::string text;
    lf::Term term;
    lf::ShellTerm shell;
    double count;
  };
  const model::ModelState& model_;
  std::map<std::string, std::vector<Meaning>> meanings_;
  std::vector<std::pair<ccg::Category, double>> leaf_cats_;  // p_syn
};

struct WordResult {
  std::string word;
  std::size_t frequency = 0;
  std::optional<lf::Term> lf;
  std::optional<ccg::Category> category;
  bool meaning_correct = false;
  bool syncat_correct = false;
  bool both_correct = false;
};

struct LexiconAccuracy {
  std::vector<WordResult> words;  // scored words, by frequency
  std::vector<std::string> missing_gold;  // top words with no gold entry (unscored)
  double meaning_pct = 0;
  double syncat_pct = 0;
  double both_pct = 0;
};

// Words ranked by token frequency, ties broken by first occurrence.
std::vector<std::pair<std::string, std::size_t>> word_frequencies(const corpus::Corpus& corpus);

// Scores the top_k most frequent words against the gold lexicon. A meaning
// matches a gold LF up to alpha and eta equivalence.
LexiconAccuracy lexicon_accuracy(const model::ModelState& model, const corpus::GoldLexicon& gold,
                                 const corpus::Corpus& corpus, std::size_t top_k = 50);

struct CriticalOptions {
  // Token or constant tags with one of these prefixes disqualify a datapoint.
  std::vector<std::string> complicating_prefixes{"adv", "prep"};
};

// Indices of transitive datapoints (a v-headed root with two entity
// arguments) that repeat no token, carry no complicating tags, and whose
// tokens all occurred in earlier datapoints.
std::vector<std::size_t> critical_examples(const corpus::Corpus& corpus, const CriticalOptions& options = {},
                                           const TagTable& tags = TagTable::builtin());

struct ZipfFit {
  double a = 0;
  double b = 0;
  double loss = 0;
};

// Squared log-space residual of f_n against 1/(n+b)^a, ranks from 1.
double zipf_loss(const std::vector<double>& frequencies, double a, double b);

// Least-squares fit of a in [0.5, 3] and b in [0, 10] to relative frequencies
// sorted in decreasing order. Throws DataError with fewer than 10 nonzero
// frequencies.
ZipfFit zipf_fit(const std::vector<double>& frequencies);

// Relative word frequencies of a corpus in decreasing order.
std::vector<double> relative_frequencies(const corpus::Corpus& corpus);

struct DiversityStats {
  std::size_t tokens = 0;
  std::size_t types = 0;
  std::size_t repeats = 0;  // tokens - types
  // Tokens whose word did not occur in an earlier datapoint.
  double pct_new_tokens = 0;
  // Each type counted once, at its first occurrence: types / tokens.
  double pct_new_types = 0;
  // (tokens seen, types seen) after each token.
  std::vector<std::pair<std::size_t, std::size_t>> type_token_curve;
};

DiversityStats diversity_stats(const corpus::Corpus& corpus);

}  // namespace ccgboot::eval
