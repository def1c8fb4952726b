#include "monobn/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "monobn/errors.hpp"

namespace monobn {

std::string ClassifierKind::name() const {
  switch (type) {
    case Type::ZR: return "ZR";
    case Type::NB: return "NB";
    case Type::KB: return "KB";
    case Type::CKB: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "CKB%g", epsilon);
      return buf;
    }
  }
  return "?";
}

ClassifierKind ClassifierKind::parse(const std::string& token) {
  if (token == "ZR") return {Type::ZR, 0.0};
  if (token == "NB") return {Type::NB, 0.0};
  if (token == "KB") return {Type::KB, 0.0};
  if (token.rfind("CKB", 0) == 0) {
    const std::string rest = token.substr(3);
    char* end = nullptr;
    const double eps = std::strtod(rest.c_str(), &end);
    if (!rest.empty() && end != rest.c_str() && *end == '\0' && eps >= 0.0 && eps <= 0.2) {
      return {Type::CKB, eps};
    }
  }
  throw DomainError("unknown classifier '" + token + "'");
}

namespace {

void bind_columns(TrainedClassifier& clf, const DiscreteDataset& data) {
  clf.class_col = data.column_index(clf.model.class_variable);
  clf.col_of_var.assign(clf.model.variables.size(), -1);
  for (size_t v = 0; v < clf.model.variables.size(); ++v) {
    clf.col_of_var[v] = data.column_index(clf.model.variables[v].name);
    if (clf.col_of_var[v] < 0) {
      throw DataError("dataset has no column for variable " + clf.model.variables[v].name);
    }
  }
}

QualitativeModel star_model(const DiscreteDataset& data) {
  if (data.class_col < 0) throw DataError("dataset has no class column");
  QualitativeModel model;
  model.name = "naive-bayes";
  const std::string class_name = data.schema[static_cast<size_t>(data.class_col)].name;
  for (const ColumnSpec& col : data.schema) {
    model.variables.push_back({col.name, col.cardinality});
    if (col.name != class_name) {
      model.edges.push_back({class_name, col.name, MonotoneSign::Unannotated});
    }
  }
  model.class_variable = class_name;
  return model;
}

}  // namespace

TrainedClassifier train(const ClassifierKind& kind, const DiscreteDataset& data,
                        const QualitativeModel& model, const FitConfig& config) {
  TrainedClassifier clf;
  clf.kind = kind;

  if (kind.type == ClassifierKind::Type::ZR) {
    if (data.rows.empty()) throw DataError("ZR needs at least one training row");
    if (data.class_col < 0) throw DataError("dataset has no class column");
    const int card = data.schema[static_cast<size_t>(data.class_col)].cardinality;
    std::vector<size_t> counts(static_cast<size_t>(card), 0);
    for (const auto& row : data.rows) {
      ++counts[static_cast<size_t>(row[static_cast<size_t>(data.class_col)])];
    }
    clf.class_cardinality = card;
    clf.class_col = data.class_col;
    clf.modal_class = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    return clf;
  }

  clf.model = kind.type == ClassifierKind::Type::NB ? star_model(data) : model;
  clf.class_cardinality =
      clf.model.variable(clf.model.class_index()).cardinality;

  if (kind.type == ClassifierKind::Type::CKB) {
    auto [cpts, report] = fit_network(data, clf.model, kind.epsilon, config);
    clf.cpts = std::move(cpts);
    clf.fit_report = std::move(report);
    clf.converged = clf.fit_report.all_converged();
  } else {
    const SufficientStats stats = count_stats(data, clf.model, config.alpha);
    clf.cpts = mle_theta(stats, clf.model);
  }
  bind_columns(clf, data);
  return clf;
}

TrainedClassifier from_fitted_network(const QualitativeModel& model, CptSet cpts,
                                      const DiscreteDataset& schema_source) {
  TrainedClassifier clf;
  clf.kind = {ClassifierKind::Type::KB, 0.0};
  clf.model = model;
  clf.cpts = std::move(cpts);
  clf.class_cardinality = model.variable(model.class_index()).cardinality;
  bind_columns(clf, schema_source);
  return clf;
}

std::vector<double> posterior(const TrainedClassifier& clf, std::span<const int> instance) {
  if (clf.kind.type == ClassifierKind::Type::ZR) {
    std::vector<double> p(static_cast<size_t>(clf.class_cardinality), 0.0);
    p[static_cast<size_t>(clf.modal_class)] = 1.0;
    return p;
  }

  const int class_var = clf.model.class_index();
  const int r = clf.class_cardinality;

  auto value_of = [&](int var, int class_value) -> int {
    if (var == class_var) return class_value;
    const int col = clf.col_of_var[static_cast<size_t>(var)];
    if (col < 0 || col >= static_cast<int>(instance.size())) {
      throw InferenceError("instance does not cover variable " +
                           clf.model.variable(var).name);
    }
    const int v = instance[static_cast<size_t>(col)];
    if (v < 0 || v >= clf.model.variable(var).cardinality) {
      throw InferenceError("instance value out of range for variable " +
                           clf.model.variable(var).name);
    }
    return v;
  };

  std::vector<int> factors = clf.model.children_of(class_var);
  factors.push_back(class_var);
  struct Factor {
    int var;
    ParentConfigIndexer indexer;
    std::vector<int> parents;
  };
  std::vector<Factor> prepared;
  prepared.reserve(factors.size());
  for (int var : factors) {
    prepared.push_back(
        {var, ParentConfigIndexer::for_node(clf.model, var), clf.model.parents_of(var)});
  }

  std::vector<double> logp(static_cast<size_t>(r), 0.0);
  std::vector<int> parent_values;
  for (int c = 0; c < r; ++c) {
    double acc = 0.0;
    for (const Factor& f : prepared) {
      parent_values.clear();
      for (int p : f.parents) parent_values.push_back(value_of(p, c));
      const int j = f.indexer.index_of(parent_values);
      const double theta =
          clf.cpts[static_cast<size_t>(f.var)].rows[static_cast<size_t>(j)]
                  [static_cast<size_t>(value_of(f.var, c))];
      acc += std::log(std::max(theta, 1e-300));
    }
    logp[static_cast<size_t>(c)] = acc;
  }

  const double m = *std::max_element(logp.begin(), logp.end());
  double z = 0.0;
  for (double& lp : logp) {
    lp = std::exp(lp - m);
    z += lp;
  }
  for (double& lp : logp) lp /= z;
  return logp;
}

int predict(const TrainedClassifier& clf, std::span<const int> instance) {
  const std::vector<double> p = posterior(clf, instance);
  // Ties break to the lowest class index.
  int best = 0;
  for (int c = 1; c < static_cast<int>(p.size()); ++c) {
    if (p[static_cast<size_t>(c)] > p[static_cast<size_t>(best)]) best = c;
  }
  return best;
}

std::vector<int> predict_all(const TrainedClassifier& clf, const DiscreteDataset& data) {
  std::vector<int> out;
  out.reserve(data.rows.size());
  for (const auto& row : data.rows) out.push_back(predict(clf, row));
  return out;
}

double evaluate_accuracy(const TrainedClassifier& clf, const DiscreteDataset& test) {
  if (test.rows.empty()) throw DataError("evaluate_accuracy: empty test set");
  if (test.class_col < 0) throw DataError("evaluate_accuracy: no class column");
  size_t correct = 0;
  for (const auto& row : test.rows) {
    if (predict(clf, row) == row[static_cast<size_t>(test.class_col)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.rows.size());
}

}  // namespace monobn
