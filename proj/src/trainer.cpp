#include "ccgboot/trainer.hpp"

#include <algorithm>
#include <unordered_map>

namespace ccgboot::train {

std::vector<lf::Term> build_candidate_lfs(const corpus::Corpus& corpus, std::size_t i, std::size_t n, bool dedupe) {
  const auto& dps = corpus.datapoints;
  std::vector<lf::Term> out{dps.at(i).lf};
  std::size_t before = std::min(n / 2, i);
  std::size_t after = std::min(n - n / 2, dps.size() - 1 - i);
  for (std::size_t j = i - before; j < i; ++j) out.push_back(dps[j].lf);
  for (std::size_t j = i + 1; j <= i + after; ++j) out.push_back(dps[j].lf);
  if (dedupe) {
    std::vector<lf::Term> unique;
    for (const lf::Term& t : out)
      if (std::none_of(unique.begin(), unique.end(), [&](const lf::Term& u) { return lf::alpha_eq(u, t); }))
        unique.push_back(t);
    out = std::move(unique);
  }
  return out;
}

namespace {

using Event = std::tuple<std::string, std::string, std::string>;

class EventIndex {
 public:
  explicit EventIndex(const std::vector<std::string>& tokens) : tokens_(tokens) {}

  // Sorted distinct event ids of a whole tree, root category included.
  std::vector<std::size_t> tree_events(const forest::ParseNode& root) {
    std::vector<std::size_t> ids = subtree(root);
    ids.push_back(intern({"root", "", ccg::render(root.category)}));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  const std::vector<Event>& events() const { return events_; }

 private:
  std::size_t intern(Event e) {
    auto [it, fresh] = ids_.emplace(e, events_.size());
    if (fresh) events_.push_back(std::move(e));
    return it->second;
  }

  const std::vector<std::size_t>& subtree(const forest::ParseNode& n) {
    auto it = memo_.find(&n);
    if (it != memo_.end()) return it->second;
    std::vector<std::size_t> ids;
    std::string cat = ccg::render(n.category);
    if (n.is_leaf()) {
      std::string shell = lf::render(n.shell);
      std::string lf_text = lf::render(n.lf);
      ids.push_back(intern({"t", cat, model::kLeafOutcome}));
      ids.push_back(intern({"h", ccg::render_undirected(n.category), shell}));
      ids.push_back(intern({"l", shell, lf_text}));
      ids.push_back(intern({"w", lf_text, model::span_key(tokens_, n.begin, n.end)}));
    } else {
      ids.push_back(intern({"t", cat, model::split_key(n.left->category, n.right->category)}));
      const auto& l = subtree(*n.left);
      ids.insert(ids.end(), l.begin(), l.end());
      const auto& r = subtree(*n.right);
      ids.insert(ids.end(), r.begin(), r.end());
    }
    return memo_.emplace(&n, std::move(ids)).first->second;
  }

  const std::vector<std::string>& tokens_;
  std::map<Event, std::size_t> ids_;
  std::vector<Event> events_;
  std::unordered_map<const forest::ParseNode*, std::vector<std::size_t>> memo_;
};

model::CondTable& table(model::ModelState& m, const std::string& name) {
  if (name == "t") return m.t();
  if (name == "h") return m.h();
  if (name == "l") return m.l();
  if (name == "w") return m.w();
  return m.root();
}

}  // namespace

std::map<std::tuple<std::string, std::string, std::string>, double> expected_counts(
    const model::ModelState& model, const std::vector<std::string>& tokens, const std::vector<lf::Term>& candidates,
    const forest::ForestLimits& limits, StepReport* report) {
  StepReport r;
  r.candidates = candidates.size();
  std::vector<forest::NodePtr> pooled;
  for (const lf::Term& c : candidates) {
    forest::Enumeration e = forest::enumerate(tokens, c, limits);
    if (e.overflow) ++r.overflowed;
    pooled.insert(pooled.end(), e.trees.begin(), e.trees.end());
  }
  r.trees = pooled.size();
  std::map<Event, double> out;
  if (pooled.empty()) {
    r.skipped = true;
  } else {
    forest::Posterior p = forest::posterior(pooled, tokens, model);
    r.degenerate = p.degenerate;
    EventIndex index(tokens);
    std::vector<double> mass;
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      for (std::size_t id : index.tree_events(*pooled[i])) {
        if (mass.size() <= id) mass.resize(id + 1, 0.0);
        mass[id] += p.weights[i];
      }
    }
    for (std::size_t id = 0; id < mass.size(); ++id)
      if (mass[id] > 0) out[index.events()[id]] = mass[id];
  }
  if (report) *report = r;
  return out;
}

StepReport train_step(model::ModelState& model, const std::vector<std::string>& tokens,
                      const std::vector<lf::Term>& candidates, const forest::ForestLimits& limits) {
  StepReport r;
  auto counts = expected_counts(model, tokens, candidates, limits, &r);
  for (const auto& [event, weight] : counts) {
    const auto& [name, context, outcome] = event;
    table(model, name).observe(outcome, context, weight);
  }
  return r;
}

TrainResult train(const corpus::Corpus& corpus, const TrainConfig& config, model::ModelState initial,
                  const Progress& progress) {
  TrainResult result{std::move(initial), {}, 0};
  model::ModelState& m = result.model;
  m.set_training_alphas();
  std::size_t tokens_seen = 0;
  for (std::size_t i = 0; i < corpus.datapoints.size(); ++i) {
    const corpus::DataPoint& dp = corpus.datapoints[i];
    auto candidates = build_candidate_lfs(corpus, i, config.distractors, config.dedupe_distractors);
    LogRow row;
    row.step = train_step(m, dp.tokens, candidates, config.limits);
    row.step.index = dp.index;
    tokens_seen += dp.tokens.size();
    row.tokens_seen = tokens_seen;
    if (row.step.skipped) ++result.skipped;
    if (config.snapshot_stride > 0 && ((i + 1) % config.snapshot_stride == 0 || i + 1 == corpus.size())) {
      if (config.snapshot_eval_alphas) m.set_eval_alphas();
      row.scores = eval::word_order_scores(m);
      m.set_training_alphas();
    }
    if (progress) progress(row);
    result.log.push_back(std::move(row));
  }
  return result;
}

}  // namespace ccgboot::train
