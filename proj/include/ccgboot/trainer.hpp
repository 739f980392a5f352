#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <optional>
#include <vector>

#include "ccgboot/corpus.hpp"
#include "ccgboot/eval.hpp"
#include "ccgboot/forest.hpp"
#include "ccgboot/model.hpp"

namespace ccgboot::train {

struct TrainConfig {
  // Distractor LFs per datapoint: floor(n/2) from the preceding datapoints
  // and ceil(n/2) from the following ones, clipped at the corpus ends.
  std::size_t distractors = 0;
  // Drop candidate LFs alpha-equal to an earlier candidate (the true LF first).
  bool dedupe_distractors = true;
  forest::ForestLimits limits;
  // Record word-order scores every this many datapoints (0 disables).
  std::size_t snapshot_stride = 1;
  // Score snapshots under the evaluation alphas; otherwise under the
  // training alphas in force.
  bool snapshot_eval_alphas = true;
};

// True LF first, then the distractors in corpus order.
std::vector<lf::Term> build_candidate_lfs(const corpus::Corpus& corpus, std::size_t i, std::size_t n,
                                          bool dedupe = true);

struct StepReport {
  std::size_t index = 0;
  std::size_t candidates = 0;
  std::size_t trees = 0;
  // Candidates whose forest overflowed and were left out.
  std::size_t overflowed = 0;
  // No tree for any candidate: the model is unchanged.
  bool skipped = false;
  bool degenerate = false;
};

// One online update: pool the forests of all candidate LFs, weight each tree
// by its posterior under the current model, and add that weight once for
// every distinct event the tree contains, plus its root category.
StepReport train_step(model::ModelState& model, const std::vector<std::string>& tokens,
                      const std::vector<lf::Term>& candidates, const forest::ForestLimits& limits = {});

// The expected counts train_step would add, without adding them. Keys are
// (table, context, outcome).
std::map<std::tuple<std::string, std::string, std::string>, double> expected_counts(
    const model::ModelState& model, const std::vector<std::string>& tokens, const std::vector<lf::Term>& candidates,
    const forest::ForestLimits& limits = {}, StepReport* report = nullptr);

struct LogRow {
  StepReport step;
  std::size_t tokens_seen = 0;
  std::optional<eval::WordOrderScores> scores;
};

struct TrainResult {
  model::ModelState model;
  std::vector<LogRow> log;
  std::size_t skipped = 0;
};

using Progress = std::function<void(const LogRow&)>;

// A single ordered pass over the corpus. The returned model is left in
// training mode.
TrainResult train(const corpus::Corpus& corpus, const TrainConfig& config, model::ModelState initial = model::ModelState{},
                  const Progress& progress = {});

}  // namespace ccgboot::train
