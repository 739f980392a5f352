#include "ccgboot/forest.hpp"

#include <cmath>
#include <limits>

#include "ccgboot/error.hpp"

namespace ccgboot::forest {

namespace {

bool mentions_wh(const lf::Term& t) {
  for (const lf::Constant& c : lf::constants(t))
    if (c.tag == "WH" || c.tag == "pro:int") return true;
  return false;
}

struct Overflow {};

struct Key {
  ccg::Category cat;
  lf::Term lf;
  std::size_t begin;
  std::size_t end;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = k.cat.hash() * 1000003u ^ k.lf.hash();
    return h * 31 + k.begin * 257 + k.end;
  }
};

class Enumerator {
 public:
  Enumerator(const std::vector<std::string>& tokens, const ForestLimits& limits, const TagTable& tags)
      : tokens_(tokens), limits_(limits), tags_(tags), checker_(tags, limits.types) {}

  types::TypeChecker& checker() { return checker_; }

  const std::vector<NodePtr>& expand(const ccg::Category& cat, const lf::Term& lf, std::size_t begin,
                                     std::size_t end) {
    Key key{cat, lf, begin, end};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<NodePtr> out;
    if (checker_.congruent(cat, lf)) {
      lf::ShellTerm shell = lf::to_shell(lf, tags_);
      if (end - begin <= limits_.max_span) {
        out.push_back(std::make_shared<const ParseNode>(ParseNode{cat, lf, shell, begin, end, nullptr, nullptr}));
      }
      if (end - begin >= 2) {
        for (const lf::Split& split : lf_splits(lf)) {
          for (const ccg::CategorySplit& cs : category_splits(cat)) {
            const ccg::Category& functor_cat = cs.forward ? cs.left : cs.right;
            const ccg::Category& argument_cat = cs.forward ? cs.right : cs.left;
            if (!checker_.congruent(functor_cat, split.functor) || !checker_.congruent(argument_cat, split.argument))
              continue;
            const lf::Term& left_lf = cs.forward ? split.functor : split.argument;
            const lf::Term& right_lf = cs.forward ? split.argument : split.functor;
            for (std::size_t mid = begin + 1; mid < end; ++mid) {
              const std::vector<NodePtr>& lefts = expand(cs.left, left_lf, begin, mid);
              if (lefts.empty()) continue;
              const std::vector<NodePtr>& rights = expand(cs.right, right_lf, mid, end);
              for (const NodePtr& l : lefts)
                for (const NodePtr& r : rights) {
                  out.push_back(std::make_shared<const ParseNode>(ParseNode{cat, lf, shell, begin, end, l, r}));
                  if (out.size() > limits_.max_trees) throw Overflow{};
                }
            }
          }
        }
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  const std::vector<lf::Split>& lf_splits(const lf::Term& lf) {
    auto it = lf_splits_.find(lf);
    if (it == lf_splits_.end()) it = lf_splits_.emplace(lf, lf::enumerate_splits(lf, limits_.lf_splits)).first;
    return it->second;
  }

  const std::vector<ccg::CategorySplit>& category_splits(const ccg::Category& cat) {
    auto it = cat_splits_.find(cat);
    if (it == cat_splits_.end()) it = cat_splits_.emplace(cat, ccg::split_category(cat, limits_.categories)).first;
    return it->second;
  }

  const std::vector<std::string>& tokens_;
  const ForestLimits& limits_;
  const TagTable& tags_;
  types::TypeChecker checker_;
  std::unordered_map<Key, std::vector<NodePtr>, KeyHash> memo_;
  std::unordered_map<lf::Term, std::vector<lf::Split>, lf::TermHash> lf_splits_;
  std::unordered_map<ccg::Category, std::vector<ccg::CategorySplit>, ccg::CategoryHash> cat_splits_;
};

}  // namespace

std::vector<ccg::Category> root_categories(const lf::Term& root_lf, types::TypeChecker& checker) {
  std::string mood = "S";
  if (mentions_wh(root_lf)) {
    mood = "Swhq";
  } else if (const lf::Constant* head = lf::head_constant(root_lf); head && head->tag == "Q") {
    mood = "Sq";
  }
  std::vector<ccg::Category> out;
  for (const std::string& name : ccg::atom_names()) {
    bool sentential = name == "S" || name == "Sq" || name == "Swhq";
    if (sentential && name != mood) continue;
    ccg::Category cat = ccg::Category::atom(name);
    if (checker.congruent(cat, root_lf)) out.push_back(cat);
  }
  return out;
}

Enumeration enumerate(const std::vector<std::string>& tokens, const lf::Term& root_lf, const ForestLimits& limits,
                      const TagTable& tags) {
  if (!lf::is_closed(root_lf)) throw DataError("root LF is not closed: " + lf::render(root_lf));
  Enumeration result;
  if (tokens.empty()) return result;
  Enumerator e(tokens, limits, tags);
  try {
    for (const ccg::Category& cat : root_categories(root_lf, e.checker())) {
      const auto& trees = e.expand(cat, root_lf, 0, tokens.size());
      result.trees.insert(result.trees.end(), trees.begin(), trees.end());
      if (result.trees.size() > limits.max_trees) throw Overflow{};
    }
  } catch (const Overflow&) {
    result.trees.clear();
    result.overflow = true;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Scoring

namespace {

void collect_factors(const ParseNode& n, const std::vector<std::string>& tokens, const model::ModelState& m,
                     std::vector<Factor>& out) {
  std::string cat = ccg::render(n.category);
  if (n.is_leaf()) {
    std::string shell = lf::render(n.shell);
    std::string lf_text = lf::render(n.lf);
    std::string words = model::span_key(tokens, n.begin, n.end);
    out.push_back(Factor{"leaf", cat, model::kLeafOutcome, m.p_leaf(n.category), m.base_split(n.category)});
    out.push_back(Factor{"shell", ccg::render_undirected(n.category), shell, m.p_shell(n.shell, n.category),
                         m.base_shell(n.shell)});
    out.push_back(Factor{"lf", shell, lf_text, m.p_lf(n.lf, n.shell), m.base_lf(n.lf)});
    out.push_back(Factor{"words", lf_text, words, m.p_words(words, n.span_length(), n.lf),
                         m.base_words(n.span_length())});
    return;
  }
  out.push_back(Factor{"split", cat, model::split_key(n.left->category, n.right->category),
                       m.p_split(n.category, n.left->category, n.right->category), m.base_split(n.category)});
  collect_factors(*n.left, tokens, m, out);
  collect_factors(*n.right, tokens, m, out);
}

double node_log(const ParseNode& n, const std::vector<std::string>& tokens, const model::ModelState& m) {
  if (n.is_leaf()) {
    std::string words = model::span_key(tokens, n.begin, n.end);
    return std::log(m.p_leaf(n.category)) + std::log(m.p_shell(n.shell, n.category)) +
           std::log(m.p_lf(n.lf, n.shell)) + std::log(m.p_words(words, n.span_length(), n.lf));
  }
  return std::log(m.p_split(n.category, n.left->category, n.right->category));
}

double subtree_log(const ParseNode& n, const std::vector<std::string>& tokens, const model::ModelState& m) {
  double v = node_log(n, tokens, m);
  if (!n.is_leaf()) v += subtree_log(*n.left, tokens, m) + subtree_log(*n.right, tokens, m);
  return v;
}

}  // namespace

std::vector<Factor> tree_factors(const ParseNode& root, const std::vector<std::string>& tokens,
                                 const model::ModelState& model) {
  std::vector<Factor> out;
  out.push_back(Factor{"root", "", ccg::render(root.category), model.p_root(root.category), model.base_root()});
  collect_factors(root, tokens, model, out);
  return out;
}

double tree_log_probability(const ParseNode& root, const std::vector<std::string>& tokens,
                            const model::ModelState& model) {
  return std::log(model.p_root(root.category)) + subtree_log(root, tokens, model);
}

double tree_joint_probability(const ParseNode& root, const std::vector<std::string>& tokens,
                              const model::ModelState& model) {
  return std::exp(tree_log_probability(root, tokens, model));
}

double CachedScorer::subtree(const ParseNode& node) {
  auto it = cache_.find(&node);
  if (it != cache_.end()) return it->second;
  double v = node_log(node, tokens_, model_);
  if (!node.is_leaf()) v += subtree(*node.left) + subtree(*node.right);
  cache_.emplace(&node, v);
  return v;
}

double CachedScorer::tree(const ParseNode& root) { return std::log(model_.p_root(root.category)) + subtree(root); }

Posterior normalize_log_joints(std::vector<double> log_joint) {
  Posterior p;
  p.log_joint = std::move(log_joint);
  const std::size_t n = p.log_joint.size();
  if (n == 0) {
    p.log_total = -std::numeric_limits<double>::infinity();
    return p;
  }
  double max = -std::numeric_limits<double>::infinity();
  for (double v : p.log_joint) max = std::max(max, v);
  if (!std::isfinite(max)) {
    p.degenerate = true;
    p.weights.assign(n, 1.0 / static_cast<double>(n));
    p.log_total = -std::numeric_limits<double>::infinity();
    return p;
  }
  double sum = 0;
  p.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.weights[i] = std::exp(p.log_joint[i] - max);
    sum += p.weights[i];
  }
  for (double& w : p.weights) w /= sum;
  p.log_total = max + std::log(sum);
  return p;
}

Posterior posterior(const std::vector<NodePtr>& trees, const std::vector<std::string>& tokens,
                    const model::ModelState& model) {
  CachedScorer scorer(tokens, model);
  std::vector<double> logs;
  logs.reserve(trees.size());
  for (const NodePtr& t : trees) logs.push_back(scorer.tree(*t));
  return normalize_log_joints(std::move(logs));
}

namespace {

nlohmann::json node_json(const ParseNode& n, const std::vector<std::string>& tokens, const model::ModelState& m) {
  nlohmann::json j{{"category", ccg::render(n.category)},
                   {"lf", lf::render(n.lf)},
                   {"shell", lf::render(n.shell)},
                   {"span", {n.begin, n.end}}};
  std::vector<Factor> factors;
  if (n.is_leaf()) {
    collect_factors(n, tokens, m, factors);
    j["words"] = model::span_key(tokens, n.begin, n.end);
  } else {
    factors.push_back(Factor{"split", ccg::render(n.category), model::split_key(n.left->category, n.right->category),
                             m.p_split(n.category, n.left->category, n.right->category),
                             m.base_split(n.category)});
  }
  nlohmann::json fs = nlohmann::json::object();
  for (const Factor& f : factors) fs[f.name] = f.probability;
  j["factors"] = fs;
  if (!n.is_leaf()) j["children"] = {node_json(*n.left, tokens, m), node_json(*n.right, tokens, m)};
  return j;
}

}  // namespace

nlohmann::json tree_to_json(const ParseNode& root, const std::vector<std::string>& tokens,
                            const model::ModelState& model) {
  double lp = tree_log_probability(root, tokens, model);
  return nlohmann::json{{"root_prior", model.p_root(root.category)},
                        {"log_probability", lp},
                        {"probability", std::exp(lp)},
                        {"tree", node_json(root, tokens, model)}};
}

}  // namespace ccgboot::forest
