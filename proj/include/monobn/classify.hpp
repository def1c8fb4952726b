#pragma once

#include <span>
#include <string>
#include <vector>

#include "monobn/data.hpp"
#include "monobn/estimation.hpp"
#include "monobn/model.hpp"

namespace monobn {

// ZR: majority class. NB: class-parent star, ignoring the supplied structure.
// KB: supplied structure, Laplace MLE. CKB: supplied structure fitted under
// the dominance constraints at the given margin.
struct ClassifierKind {
  enum class Type { ZR, NB, KB, CKB };
  Type type = Type::KB;
  double epsilon = 0.0;  // CKB only; must lie in [0, 0.2]

  std::string name() const;
  static ClassifierKind parse(const std::string& token);  // "ZR", "NB", "KB", "CKB0.1"
};

struct TrainedClassifier {
  ClassifierKind kind;
  int class_cardinality = 2;
  int modal_class = 0;  // ZR only

  // NB/KB/CKB: the fitted network plus dataset-column bookkeeping.
  QualitativeModel model;
  CptSet cpts;
  FitReport fit_report;  // CKB only
  bool converged = true;

  int class_col = -1;
  std::vector<int> col_of_var;  // model variable index -> dataset column
};

TrainedClassifier train(const ClassifierKind& kind, const DiscreteDataset& data,
                        const QualitativeModel& model, const FitConfig& config = {});

// Classifier over an already-fitted network; the dataset supplies the column
// layout instances will use.
TrainedClassifier from_fitted_network(const QualitativeModel& model, CptSet cpts,
                                      const DiscreteDataset& schema_source);

// P(class | full evidence); factors not containing the class cancel, so only
// the class node's row and its children's entries are accumulated (in log
// space). The instance is a full dataset row; its class cell is ignored.
std::vector<double> posterior(const TrainedClassifier& clf, std::span<const int> instance);

int predict(const TrainedClassifier& clf, std::span<const int> instance);
std::vector<int> predict_all(const TrainedClassifier& clf, const DiscreteDataset& data);

double evaluate_accuracy(const TrainedClassifier& clf, const DiscreteDataset& test);

}  // namespace monobn
