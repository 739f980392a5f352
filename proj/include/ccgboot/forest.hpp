#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "ccgboot/category.hpp"
#include "ccgboot/lf.hpp"
#include "ccgboot/model.hpp"
#include "ccgboot/type_system.hpp"

namespace ccgboot::forest {

// A node of a derivation. Subtrees are shared between the trees of a forest.
struct ParseNode {
  ccg::Category category;
  lf::Term lf;
  lf::ShellTerm shell;
  std::size_t begin = 0;  // token span [begin, end)
  std::size_t end = 0;
  std::shared_ptr<const ParseNode> left;  // both null for a leaf
  std::shared_ptr<const ParseNode> right;

  bool is_leaf() const { return !left; }
  std::size_t span_length() const { return end - begin; }
};

using NodePtr = std::shared_ptr<const ParseNode>;

struct ForestLimits {
  std::size_t max_trees = 5000;
  // Longest token span a single leaf may cover.
  std::size_t max_span = 3;
  lf::SplitOptions lf_splits;
  ccg::SplitInventory categories;
  types::TypeOptions types;
};

struct Enumeration {
  std::vector<NodePtr> trees;
  // Set when the search hit max_trees; trees is then empty.
  bool overflow = false;
};

// Root categories allowed for an LF: the congruent atoms, with Q-headed LFs
// restricted to Sq, LFs containing WH to Swhq, and other truth-valued LFs to S.
std::vector<ccg::Category> root_categories(const lf::Term& root_lf, types::TypeChecker& checker);

// Every derivation of the tokens whose root carries root_lf, within limits.
// Forest content depends only on the inputs, never on model parameters.
Enumeration enumerate(const std::vector<std::string>& tokens, const lf::Term& root_lf, const ForestLimits& limits = {},
                      const TagTable& tags = TagTable::builtin());

struct Factor {
  std::string name;  // root, split, leaf, shell, lf, words
  std::string context;
  std::string outcome;
  double probability;
  double base;  // base-distribution value H for this outcome
};

// Factors of the joint probability in a fixed preorder: the root prior, then
// for each node either its split probability or its four leaf factors.
std::vector<Factor> tree_factors(const ParseNode& root, const std::vector<std::string>& tokens,
                                 const model::ModelState& model);

double tree_log_probability(const ParseNode& root, const std::vector<std::string>& tokens,
                            const model::ModelState& model);
double tree_joint_probability(const ParseNode& root, const std::vector<std::string>& tokens,
                              const model::ModelState& model);

// Log-probability scorer that caches the score of each shared subtree.
class CachedScorer {
 public:
  CachedScorer(const std::vector<std::string>& tokens, const model::ModelState& model)
      : tokens_(tokens), model_(model) {}

  // Includes the root prior.
  double tree(const ParseNode& root);
  // Excludes the root prior.
  double subtree(const ParseNode& node);

 private:
  const std::vector<std::string>& tokens_;
  const model::ModelState& model_;
  std::unordered_map<const ParseNode*, double> cache_;
};

struct Posterior {
  std::vector<double> weights;
  std::vector<double> log_joint;
  double log_total = 0;
  // Every joint was zero and the weights fell back to uniform.
  bool degenerate = false;
};

// Normalizes log joint probabilities (log-sum-exp).
Posterior normalize_log_joints(std::vector<double> log_joint);

// Posterior over a list of trees, all over the same tokens.
Posterior posterior(const std::vector<NodePtr>& trees, const std::vector<std::string>& tokens,
                    const model::ModelState& model);

// Debug view of a scored tree.
nlohmann::json tree_to_json(const ParseNode& root, const std::vector<std::string>& tokens,
                            const model::ModelState& model);

}  // namespace ccgboot::forest
