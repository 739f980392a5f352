#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ccgboot/category.hpp"
#include "ccgboot/lf.hpp"

namespace ccgboot::model {

// Description of a table's base distribution. The probabilities themselves
// are computed by ModelState from typed outcomes; the spec is stored so a
// checkpoint records what the counts were smoothed against.
struct BaseSpec {
  std::string kind;  // split-uniform, term-geometric, span-geometric, uniform
  std::map<std::string, double> params;

  friend bool operator==(const BaseSpec&, const BaseSpec&) = default;
};

// One conditional Dirichlet-process table: fractional counts n(a,b), their
// per-context marginals n(b), a concentration alpha and a base spec.
class CondTable {
 public:
  struct Context {
    double total = 0;
    std::map<std::string, double, std::less<>> counts;
    friend bool operator==(const Context&, const Context&) = default;
  };

  CondTable() = default;
  CondTable(double alpha, BaseSpec base) : alpha_(alpha), base_(std::move(base)) {}

  double alpha() const { return alpha_; }
  void set_alpha(double alpha);
  const BaseSpec& base() const { return base_; }

  double count(std::string_view outcome, std::string_view context) const;
  double total(std::string_view context) const;

  // (n(a,b) + alpha * base) / (n(b) + alpha)
  double posterior(std::string_view outcome, std::string_view context, double base) const;

  // Adds weight to n(a,b) and n(b). Throws std::invalid_argument on a
  // negative or non-finite weight.
  void observe(std::string_view outcome, std::string_view context, double weight);

  const Context* find(std::string_view context) const;
  const std::map<std::string, Context, std::less<>>& contexts() const { return contexts_; }

  friend bool operator==(const CondTable&, const CondTable&) = default;

 private:
  double alpha_ = 1.0;
  BaseSpec base_;
  std::map<std::string, Context, std::less<>> contexts_;
};

// (n_ab + alpha * base) / (n_b + alpha).
double dp_posterior(double n_ab, double n_b, double alpha, double base);

struct Alphas {
  double t = 1, h = 1, l = 1, w = 1, root = 1;
  friend bool operator==(const Alphas&, const Alphas&) = default;
};

struct ModelConfig {
  Alphas training{10, 1, 1, 0.25, 1};
  Alphas eval{1, 1, 1, 1, 1};
  // Geometric stopping parameter shared by the term and span bases.
  double rho = 0.5;
  // Extra per-node factor in the shell and LF bases. At 1 the base is the
  // plain geometric over node count; values below 1 penalize large terms
  // further.
  double kappa_h = 1.0;
  double kappa_l = 1.0;
  // Per-token probability in the word-span base.
  double vocab = 1e4;
  ccg::SplitInventory inventory;
};

inline const char* const kLeafOutcome = "leaf";

// Outcome key of a split in p_t: "left right".
std::string split_key(const ccg::Category& left, const ccg::Category& right);
// p_w outcome: tokens joined by single spaces.
std::string span_key(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end);

// Model parameters theta: the four conditional tables and the root prior.
class ModelState {
 public:
  explicit ModelState(ModelConfig config = {});

  const ModelConfig& config() const { return config_; }
  bool eval_mode() const { return eval_mode_; }
  void set_training_alphas();
  void set_eval_alphas();
  // Replace the training alphas (CLI overrides); applies immediately when in
  // training mode.
  void set_training_override(const Alphas& a);

  // Base distributions.
  double base_split(const ccg::Category& cat) const;
  double base_shell(const lf::ShellTerm& shell) const;
  double base_lf(const lf::Term& lf) const;
  double base_words(std::size_t span_length) const;
  double base_root() const;

  // Posteriors under the current alphas.
  double p_split(const ccg::Category& parent, const ccg::Category& left, const ccg::Category& right) const;
  double p_leaf(const ccg::Category& cat) const;
  double p_shell(const lf::ShellTerm& shell, const ccg::Category& cat) const;
  double p_lf(const lf::Term& lf, const lf::ShellTerm& shell) const;
  double p_words(std::string_view words, std::size_t span_length, const lf::Term& lf) const;
  double p_root(const ccg::Category& cat) const;

  // Same quantities on pre-rendered keys (used where typed objects are not
  // at hand, e.g. evaluation over observed supports).
  double p_shell_key(std::string_view shell, std::size_t shell_size, std::string_view undirected_cat) const;
  double p_lf_key(std::string_view lf, std::size_t lf_size, std::string_view shell) const;
  double p_words_key(std::string_view words, std::size_t span_length, std::string_view lf) const;

  CondTable& t() { return t_; }
  CondTable& h() { return h_; }
  CondTable& l() { return l_; }
  CondTable& w() { return w_; }
  CondTable& root() { return root_; }
  const CondTable& t() const { return t_; }
  const CondTable& h() const { return h_; }
  const CondTable& l() const { return l_; }
  const CondTable& w() const { return w_; }
  const CondTable& root() const { return root_; }

  nlohmann::json to_json() const;
  static ModelState from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static ModelState load(const std::string& path);

 private:
  void apply_alphas(const Alphas& a);
  double term_base(std::size_t nodes, double kappa) const;

  ModelConfig config_;
  bool eval_mode_ = false;
  CondTable t_, h_, l_, w_, root_;
};

inline constexpr int kCheckpointVersion = 1;

}  // namespace ccgboot::model
