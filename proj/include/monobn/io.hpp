#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "monobn/constraints.hpp"
#include "monobn/estimation.hpp"
#include "monobn/model.hpp"

namespace monobn {

struct ExperimentSpec;
struct ClassifierKind;

// Fitted CPTs keyed by node, rows in parent-config-index order.
std::string cpts_to_json(const QualitativeModel& model, const CptSet& cpts,
                         double epsilon);
std::string fit_report_to_json(const FitReport& report);
std::string violations_to_json(const QualitativeModel& model,
                               const std::vector<Violation>& violations);
std::string cutpoints_to_json(const std::map<std::string, std::vector<double>>& cuts);

ExperimentSpec experiment_spec_from_json(const std::string& text);
std::string experiment_manifest_json(const ExperimentSpec& spec);

// Prediction CSV: instance-id, true, predicted, p(class = 1).
struct PredictionRow {
  long long id = 0;
  int truth = 0;
  int predicted = 0;
  double p_positive = 0.0;
};

void write_predictions_csv(const std::vector<PredictionRow>& rows, std::ostream& out);
std::vector<PredictionRow> load_predictions_csv(const std::string& path);

}  // namespace monobn
