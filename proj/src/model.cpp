#include "ccgboot/model.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ccgboot/error.hpp"

namespace ccgboot::model {

double dp_posterior(double n_ab, double n_b, double alpha, double base) {
  return (n_ab + alpha * base) / (n_b + alpha);
}

void CondTable::set_alpha(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  alpha_ = alpha;
}

const CondTable::Context* CondTable::find(std::string_view context) const {
  auto it = contexts_.find(context);
  return it == contexts_.end() ? nullptr : &it->second;
}

double CondTable::count(std::string_view outcome, std::string_view context) const {
  const Context* c = find(context);
  if (!c) return 0;
  auto it = c->counts.find(outcome);
  return it == c->counts.end() ? 0 : it->second;
}

double CondTable::total(std::string_view context) const {
  const Context* c = find(context);
  return c ? c->total : 0;
}

double CondTable::posterior(std::string_view outcome, std::string_view context, double base) const {
  const Context* c = find(context);
  if (!c) return base;
  auto it = c->counts.find(outcome);
  return dp_posterior(it == c->counts.end() ? 0 : it->second, c->total, alpha_, base);
}

void CondTable::observe(std::string_view outcome, std::string_view context, double weight) {
  if (!(weight >= 0) || !std::isfinite(weight)) throw std::invalid_argument("observation weight must be >= 0");
  if (weight == 0) return;
  auto it = contexts_.find(context);
  if (it == contexts_.end()) it = contexts_.emplace(std::string(context), Context{}).first;
  Context& c = it->second;
  auto jt = c.counts.find(outcome);
  if (jt == c.counts.end()) jt = c.counts.emplace(std::string(outcome), 0.0).first;
  jt->second += weight;
  c.total += weight;
}

std::string split_key(const ccg::Category& left, const ccg::Category& right) {
  return ccg::render(left) + " " + ccg::render(right);
}

std::string span_key(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += tokens[i];
  }
  return out;
}

namespace {

BaseSpec term_spec(double rho, double kappa) { return BaseSpec{"term-geometric", {{"rho", rho}, {"kappa", kappa}}}; }

}  // namespace

ModelState::ModelState(ModelConfig config) : config_(std::move(config)) {
  t_ = CondTable(1, BaseSpec{"split-uniform", {{"max_slashes", static_cast<double>(config_.inventory.max_slashes)}}});
  h_ = CondTable(1, term_spec(config_.rho, config_.kappa_h));
  l_ = CondTable(1, term_spec(config_.rho, config_.kappa_l));
  w_ = CondTable(1, BaseSpec{"span-geometric", {{"rho", config_.rho}, {"vocab", config_.vocab}}});
  root_ = CondTable(1, BaseSpec{"uniform", {{"size", static_cast<double>(ccg::atom_names().size())}}});
  set_training_alphas();
}

void ModelState::apply_alphas(const Alphas& a) {
  t_.set_alpha(a.t);
  h_.set_alpha(a.h);
  l_.set_alpha(a.l);
  w_.set_alpha(a.w);
  root_.set_alpha(a.root);
}

void ModelState::set_training_alphas() {
  eval_mode_ = false;
  apply_alphas(config_.training);
}

void ModelState::set_eval_alphas() {
  eval_mode_ = true;
  apply_alphas(config_.eval);
}

void ModelState::set_training_override(const Alphas& a) {
  config_.training = a;
  if (!eval_mode_) apply_alphas(a);
}

double ModelState::term_base(std::size_t nodes, double kappa) const {
  double rho = config_.rho;
  return (1 - rho) * std::pow(rho, static_cast<double>(nodes) - 1) * std::pow(kappa, static_cast<double>(nodes));
}

double ModelState::base_split(const ccg::Category& cat) const {
  // Same count as split_category: each admissible argument gives one
  // forward and one backward split.
  std::size_t n = 0;
  for (const auto& y : config_.inventory.arguments)
    if (cat.slash_count() + 1 + y.slash_count() <= config_.inventory.max_slashes) n += 2;
  return 1.0 / static_cast<double>(n + 1);
}

double ModelState::base_shell(const lf::ShellTerm& shell) const { return term_base(shell.term.size(), config_.kappa_h); }

double ModelState::base_lf(const lf::Term& lf) const { return term_base(lf.size(), config_.kappa_l); }

double ModelState::base_words(std::size_t span_length) const {
  double rho = config_.rho;
  double n = static_cast<double>(span_length);
  return (1 - rho) * std::pow(rho, n - 1) * std::pow(config_.vocab, -n);
}

double ModelState::base_root() const { return 1.0 / static_cast<double>(ccg::atom_names().size()); }

double ModelState::p_split(const ccg::Category& parent, const ccg::Category& left, const ccg::Category& right) const {
  return t_.posterior(split_key(left, right), ccg::render(parent), base_split(parent));
}

double ModelState::p_leaf(const ccg::Category& cat) const {
  return t_.posterior(kLeafOutcome, ccg::render(cat), base_split(cat));
}

double ModelState::p_shell(const lf::ShellTerm& shell, const ccg::Category& cat) const {
  return h_.posterior(lf::render(shell), ccg::render_undirected(cat), base_shell(shell));
}

double ModelState::p_lf(const lf::Term& lf, const lf::ShellTerm& shell) const {
  return l_.posterior(lf::render(lf), lf::render(shell), base_lf(lf));
}

double ModelState::p_words(std::string_view words, std::size_t span_length, const lf::Term& lf) const {
  return w_.posterior(words, lf::render(lf), base_words(span_length));
}

double ModelState::p_root(const ccg::Category& cat) const {
  return root_.posterior(ccg::render(cat), "", base_root());
}

double ModelState::p_shell_key(std::string_view shell, std::size_t shell_size, std::string_view undirected_cat) const {
  return h_.posterior(shell, undirected_cat, term_base(shell_size, config_.kappa_h));
}

double ModelState::p_lf_key(std::string_view lf, std::size_t lf_size, std::string_view shell) const {
  return l_.posterior(lf, shell, term_base(lf_size, config_.kappa_l));
}

double ModelState::p_words_key(std::string_view words, std::size_t span_length, std::string_view lf) const {
  return w_.posterior(words, lf, base_words(span_length));
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

using nlohmann::json;

json alphas_json(const Alphas& a) {
  return json{{"t", a.t}, {"h", a.h}, {"l", a.l}, {"w", a.w}, {"root", a.root}};
}

Alphas alphas_from(const json& j) {
  return Alphas{j.at("t").get<double>(), j.at("h").get<double>(), j.at("l").get<double>(), j.at("w").get<double>(),
                j.at("root").get<double>()};
}

json table_json(const CondTable& t) {
  json entries = json::array();
  for (const auto& [context, c] : t.contexts())
    for (const auto& [outcome, n] : c.counts) entries.push_back(json::array({context, outcome, n}));
  return json{{"alpha", t.alpha()}, {"base", {{"kind", t.base().kind}, {"params", t.base().params}}},
              {"entries", std::move(entries)}};
}

CondTable table_from(const json& j) {
  BaseSpec base{j.at("base").at("kind").get<std::string>(),
                j.at("base").at("params").get<std::map<std::string, double>>()};
  CondTable t(j.at("alpha").get<double>(), std::move(base));
  for (const json& e : j.at("entries")) {
    double n = e.at(2).get<double>();
    if (n < 0) throw DataError("negative count in checkpoint");
    t.observe(e.at(1).get<std::string>(), e.at(0).get<std::string>(), n);
  }
  return t;
}

}  // namespace

nlohmann::json ModelState::to_json() const {
  json inventory = json::array();
  for (const auto& c : config_.inventory.arguments) inventory.push_back(ccg::render(c));
  json cfg{{"training_alphas", alphas_json(config_.training)},
           {"eval_alphas", alphas_json(config_.eval)},
           {"rho", config_.rho},
           {"kappa_h", config_.kappa_h},
           {"kappa_l", config_.kappa_l},
           {"vocab", config_.vocab},
           {"split_arguments", inventory},
           {"max_slashes", config_.inventory.max_slashes}};
  return json{{"format", "ccgboot-model"},
              {"version", kCheckpointVersion},
              {"config", cfg},
              {"eval_mode", eval_mode_},
              {"tables",
               {{"t", table_json(t_)},
                {"h", table_json(h_)},
                {"l", table_json(l_)},
                {"w", table_json(w_)},
                {"root", table_json(root_)}}}};
}

ModelState ModelState::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "ccgboot-model") throw DataError("not a ccgboot model checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw DataError("unsupported checkpoint version " + j.at("version").dump());
    const json& c = j.at("config");
    ModelConfig cfg;
    cfg.training = alphas_from(c.at("training_alphas"));
    cfg.eval = alphas_from(c.at("eval_alphas"));
    cfg.rho = c.at("rho").get<double>();
    cfg.kappa_h = c.at("kappa_h").get<double>();
    cfg.kappa_l = c.at("kappa_l").get<double>();
    cfg.vocab = c.at("vocab").get<double>();
    cfg.inventory.arguments.clear();
    for (const json& a : c.at("split_arguments")) cfg.inventory.arguments.push_back(ccg::parse_category(a.get<std::string>()));
    cfg.inventory.max_slashes = c.at("max_slashes").get<std::size_t>();
    ModelState state(cfg);
    const json& tables = j.at("tables");
    state.t_ = table_from(tables.at("t"));
    state.h_ = table_from(tables.at("h"));
    state.l_ = table_from(tables.at("l"));
    state.w_ = table_from(tables.at("w"));
    state.root_ = table_from(tables.at("root"));
    state.eval_mode_ = j.at("eval_mode").get<bool>();
    return state;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

void ModelState::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json().dump(1) << '\n';
}

ModelState ModelState::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed checkpoint " + path + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace ccgboot::model
