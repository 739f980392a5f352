#include "ccgboot/worked_example.hpp"

#include <cmath>
#include <map>
#include <set>

#include "ccgboot/error.hpp"

namespace ccgboot::worked {

namespace {

constexpr double kMass = 1e9;

model::CondTable& table_for(model::ModelState& m, const std::string& name) {
  if (name == "t") return m.t();
  if (name == "h") return m.h();
  if (name == "l") return m.l();
  if (name == "w") return m.w();
  if (name == "root") return m.root();
  throw Error("unknown table " + name);
}

std::string table_of_factor(const std::string& factor) {
  if (factor == "split" || factor == "leaf") return "t";
  if (factor == "shell") return "h";
  if (factor == "lf") return "l";
  if (factor == "words") return "w";
  return "root";
}

bool is_leaf(const forest::NodePtr& n, const char* cat, std::size_t b, std::size_t e) {
  return n && n->is_leaf() && ccg::render(n->category) == cat && n->begin == b && n->end == e;
}

bool is_internal(const forest::NodePtr& n, const char* cat) {
  return n && !n->is_leaf() && ccg::render(n->category) == cat;
}

}  // namespace

model::ModelState build_model(const std::vector<Target>& targets, const model::ModelConfig& config) {
  model::ModelState m(config);
  m.set_eval_alphas();
  std::map<std::pair<std::string, std::string>, std::vector<const Target*>> groups;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const Target& t : targets) {
    if (!seen.emplace(t.table, t.context, t.outcome).second) continue;
    groups[{t.table, t.context}].push_back(&t);
  }
  for (const auto& [key, members] : groups) {
    model::CondTable& table = table_for(m, key.first);
    double alpha = table.alpha();
    double sum = 0;
    for (const Target* t : members) sum += t->probability;
    if (sum > 1 + 1e-9) throw Error("targets in context '" + key.second + "' sum above 1");
    if (sum > 1 - 1e-9) {
      if (members.size() != 1) throw Error("several targets share a saturated context");
      table.observe(members.front()->outcome, key.second, kMass);
      continue;
    }
    double used = 0;
    for (const Target* t : members) {
      double n = t->probability * (kMass + alpha) - alpha * t->base;
      if (n < 0) throw Error("target probability below its smoothed floor");
      table.observe(t->outcome, key.second, n);
      used += n;
    }
    table.observe("<other>", key.second, kMass - used);
  }
  return m;
}

std::vector<std::string> tokens() { return {"you", "lost", "a", "pencil"}; }

lf::Term root_lf() { return lf::parse_lf("v|lose-past pro:per|you (det:art|a n|pencil)"); }

forest::NodePtr find_reference_tree(const std::vector<forest::NodePtr>& trees) {
  for (const auto& t : trees) {
    if (!is_internal(t, "S") || !is_leaf(t->left, "NP", 0, 1) || !is_internal(t->right, "S\\NP")) continue;
    const auto& vp = t->right;
    if (!is_leaf(vp->left, "S\\NP/NP", 1, 2) || !is_internal(vp->right, "NP")) continue;
    const auto& np = vp->right;
    if (is_leaf(np->left, "NP/N", 2, 3) && is_leaf(np->right, "N", 3, 4)) return t;
  }
  return nullptr;
}

forest::NodePtr find_competitor_tree(const std::vector<forest::NodePtr>& trees) {
  for (const auto& t : trees)
    if (is_internal(t, "S") && is_leaf(t->left, "NP", 0, 1) && is_leaf(t->right, "S\\NP", 1, 4)) return t;
  return nullptr;
}

const std::vector<double>& reference_factor_values() {
  static const std::vector<double> values{0.388, 1.0,   0.738, 0.66,  0.327, 0.912, 0.549, 0.989, 0.961, 0.012,
                                          0.862, 0.261, 0.994, 0.999, 0.486, 0.95,  0.994, 1.0,   0.015, 0.973};
  return values;
}

Example build(double total_target) {
  const std::vector<std::string> toks = tokens();
  forest::Enumeration e = forest::enumerate(toks, root_lf());
  if (e.overflow) throw Error("worked example forest overflowed");
  forest::NodePtr reference = find_reference_tree(e.trees);
  forest::NodePtr competitor = find_competitor_tree(e.trees);
  if (!reference || !competitor) throw Error("worked example derivations missing from the forest");

  model::ModelState blank;
  blank.set_eval_alphas();
  std::vector<forest::Factor> ref_factors = forest::tree_factors(*reference, toks, blank);
  const auto& values = reference_factor_values();
  if (ref_factors.size() != values.size()) throw Error("unexpected worked example tree shape");
  std::vector<Target> targets;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& f = ref_factors[i];
    targets.push_back(Target{table_of_factor(f.name), f.context, f.outcome, values[i], f.base});
  }
  // The competitor shares the root, root split and subject leaf; its
  // remaining factors are the S\NP leaf.
  std::vector<forest::Factor> comp_factors = forest::tree_factors(*competitor, toks, blank);
  const std::vector<double> comp_values{0.4, 0.5, 0.05};
  for (std::size_t i = 0; i < comp_values.size(); ++i) {
    const auto& f = comp_factors[6 + i];
    targets.push_back(Target{table_of_factor(f.name), f.context, f.outcome, comp_values[i], f.base});
  }
  const forest::Factor& words = comp_factors[9];
  double x = 1e-4;
  Example out{blank, e.trees, reference};
  for (int round = 0; round < 3; ++round) {
    std::vector<Target> all = targets;
    all.push_back(Target{"w", words.context, words.outcome, x, words.base});
    out.model = build_model(all);
    forest::Posterior p = forest::posterior(e.trees, toks, out.model);
    double total = std::exp(p.log_total);
    double ref = forest::tree_joint_probability(*reference, toks, out.model);
    double comp = forest::tree_joint_probability(*competitor, toks, out.model);
    double rest = total - ref - comp;
    double want = total_target - ref - rest;
    if (want <= 0) throw Error("worked example total is below the reference joint");
    x *= want / comp;
  }
  out.reference_joint = forest::tree_joint_probability(*reference, toks, out.model);
  forest::Posterior p = forest::posterior(e.trees, toks, out.model);
  out.total = std::exp(p.log_total);
  for (std::size_t i = 0; i < e.trees.size(); ++i)
    if (e.trees[i] == reference) out.reference_weight = p.weights[i];
  return out;
}

}  // namespace ccgboot::worked
