#pragma once

#include <string>
#include <vector>

#include "ccgboot/forest.hpp"
#include "ccgboot/model.hpp"

namespace ccgboot::worked {

// A factor value to reproduce: under the model, outcome given context in the
// named table should have this probability.
struct Target {
  std::string table;  // t, h, l, w or root
  std::string context;
  std::string outcome;
  double probability;
  double base;
};

// Set counts so that, under the evaluation alphas, each target's posterior
// equals its probability. Targets sharing a context must not sum above 1; a
// context whose targets sum to 1 gets a single huge count so the posterior
// is 1 up to about 1e-9. Returns a model in evaluation mode.
model::ModelState build_model(const std::vector<Target>& targets, const model::ModelConfig& config = {});

// "you lost a pencil" with its root LF.
std::vector<std::string> tokens();
lf::Term root_lf();

// The derivation of the example: you (NP) and lost (S\NP/NP) a (NP/N) pencil (N).
forest::NodePtr find_reference_tree(const std::vector<forest::NodePtr>& trees);
// The competing derivation with "lost a pencil" as a single S\NP leaf.
forest::NodePtr find_competitor_tree(const std::vector<forest::NodePtr>& trees);

// Per-factor values of the reference tree in tree_factors order; the root
// split S -> NP S\NP is not given a value in the example and is set to 1.
const std::vector<double>& reference_factor_values();

struct Example {
  model::ModelState model;
  std::vector<forest::NodePtr> trees;
  forest::NodePtr reference;
  double reference_joint = 0;
  double total = 0;
  double reference_weight = 0;
};

// Builds the checkpoint reproducing the example: the reference tree's
// factors as listed, and the competitor tree tuned so the pooled forest
// total is total_target.
Example build(double total_target = 5.888e-7);

}  // namespace ccgboot::worked
