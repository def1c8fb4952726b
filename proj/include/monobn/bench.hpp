#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "monobn/classify.hpp"
#include "monobn/data.hpp"
#include "monobn/estimation.hpp"
#include "monobn/model.hpp"

namespace monobn {

// Declarative description of one replicated learning-curve run.
struct ExperimentSpec {
  std::string dataset;
  int bins = 2;
  std::vector<ClassifierKind> classifiers;
  std::vector<int> sizes;  // defaults to 1..50
  int replications = 50;
  uint64_t master_seed = 1;
  double test_fraction = 1.0 / 3.0;
  FitConfig fit;

  static ExperimentSpec defaults();
};

struct CurveCell {
  std::vector<double> accuracies;  // one per replication
  std::vector<char> converged;     // all-nodes-converged flag per replication

  double mean() const;
  double stddev() const;  // sample standard deviation; 0 for a single value
  int n_converged() const;
};

struct LearningCurve {
  std::vector<std::string> classifier_names;
  std::vector<int> sizes;
  // cells[classifier][size index]
  std::vector<std::vector<CurveCell>> cells;
};

// Per-replication significant-win tallies for one classifier pair across the
// size grid; insignificant replications count as ties.
struct PairTally {
  std::string a;
  std::string b;
  std::vector<int> wins_a;
  std::vector<int> wins_b;
  std::vector<int> ties;
};

struct CurveOutputs {
  LearningCurve curve;
  std::vector<PairTally> pairs;
};

// One stratified split per experiment; per-(m, replication) seeds drawn from
// the master seed. Every classifier in a replication trains on the same
// sample and is scored on the same test set.
CurveOutputs run_learning_curve(const DiscreteDataset& data, const QualitativeModel& model,
                                const ExperimentSpec& spec);

struct McNemarResult {
  int b = 0;  // A correct, B wrong
  int c = 0;  // B correct, A wrong
  double statistic = 0.0;
  bool significant = false;
  int winner = -1;  // 0 = A, 1 = B, -1 = none
};

// Continuity-corrected McNemar test at alpha = 0.05:
// statistic = (|b - c| - 1)^2 / (b + c), compared to 3.841.
McNemarResult mcnemar_test(const std::vector<int>& preds_a, const std::vector<int>& preds_b,
                           const std::vector<int>& truth);

// Writes curve.csv, mcnemar.csv, and manifest.json. Output is byte-stable
// across runs with the same spec.
void emit_reports(const CurveOutputs& outputs, const ExperimentSpec& spec,
                  const std::filesystem::path& destination);

}  // namespace monobn
