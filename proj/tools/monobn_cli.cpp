// Command-line front end: fit, check, discretize, curve, mcnemar.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "monobn/bench.hpp"
#include "monobn/classify.hpp"
#include "monobn/constraints.hpp"
#include "monobn/corpus.hpp"
#include "monobn/data.hpp"
#include "monobn/errors.hpp"
#include "monobn/estimation.hpp"
#include "monobn/io.hpp"
#include "monobn/model.hpp"

namespace fs = std::filesystem;
using namespace monobn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNonConverged = 2;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

double checked_epsilon(double epsilon) {
  if (epsilon < 0.0) throw DomainError("epsilon must be non-negative");
  if (epsilon > 0.2) {
    throw DomainError("epsilon " + std::to_string(epsilon) +
                      " rejected: gradient search becomes unreliable above 0.2");
  }
  return epsilon;
}

int run_fit(const std::string& data_path, const std::string& model_path, double epsilon,
            const FitConfig& config, const std::string& out_path,
            const std::string& report_path, const std::string& eval_path,
            const std::string& predictions_path, bool strict) {
  const QualitativeModel model = parse_qualitative_model_file(model_path);
  const DiscreteDataset data = load_discrete_csv(data_path, model);
  auto [cpts, report] = fit_network(data, model, checked_epsilon(epsilon), config);

  if (!out_path.empty()) {
    write_text(out_path, cpts_to_json(model, cpts, epsilon));
  } else {
    std::cout << cpts_to_json(model, cpts, epsilon);
  }
  if (!report_path.empty()) write_text(report_path, fit_report_to_json(report));

  if (!eval_path.empty()) {
    const DiscreteDataset eval = load_discrete_csv(eval_path, model);
    const TrainedClassifier clf = from_fitted_network(model, cpts, eval);
    std::vector<PredictionRow> rows;
    for (size_t i = 0; i < eval.rows.size(); ++i) {
      const std::vector<double> post = posterior(clf, eval.rows[i]);
      PredictionRow r;
      r.id = static_cast<long long>(i);
      r.truth = eval.rows[i][static_cast<size_t>(eval.class_col)];
      r.predicted = predict(clf, eval.rows[i]);
      r.p_positive = post.size() > 1 ? post[1] : post[0];
      rows.push_back(r);
    }
    if (predictions_path.empty()) {
      write_predictions_csv(rows, std::cout);
    } else {
      std::ofstream out(predictions_path);
      if (!out) throw DataError("cannot write " + predictions_path);
      write_predictions_csv(rows, out);
    }
  }

  for (const NodeFitReport& n : report.nodes) {
    if (!n.converged) {
      std::cerr << "warning: node " << n.node << " did not reach feasibility (max delta "
                << n.max_delta << ")\n";
    }
  }
  if (strict && !report.all_converged()) return kExitNonConverged;
  return kExitOk;
}

int run_check(const std::string& data_path, const std::string& model_path, double epsilon,
              double alpha, double tolerance, const std::string& out_path) {
  const QualitativeModel model = parse_qualitative_model_file(model_path);
  const DiscreteDataset data = load_discrete_csv(data_path, model);
  const SufficientStats stats = count_stats(data, model, alpha);
  const CptSet cpts = mle_theta(stats, model);
  const ConstraintSet constraints = generate_constraints(model, checked_epsilon(epsilon));
  const FeasibilityReport report = check_feasibility(cpts, constraints, tolerance);

  const std::string text = violations_to_json(model, report.violations);
  if (!out_path.empty()) {
    write_text(out_path, text);
  } else {
    std::cout << text;
  }
  std::cerr << (report.feasible ? "feasible" : "infeasible") << ": "
            << report.violations.size() << " of " << constraints.total()
            << " constraints violated beyond " << tolerance << "\n";
  return kExitOk;
}

int run_discretize(const std::string& dataset, int bins, const std::string& corpus_dir,
                   const std::string& out_path, const std::string& cuts_path) {
  const PreparedDataset prepared = prepare_corpus_dataset(dataset, bins, corpus_dir);
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot write " + out_path);
  write_discrete_csv(prepared.data, out);
  if (!cuts_path.empty()) write_text(cuts_path, cutpoints_to_json(prepared.cutpoints));
  std::cerr << dataset << ": kept " << prepared.rows_kept << " rows, dropped "
            << prepared.rows_dropped << "\n";
  return kExitOk;
}

int run_curve(const std::string& spec_path, const std::string& corpus_dir,
              const std::string& out_dir, bool strict) {
  std::ifstream in(spec_path);
  if (!in) throw DataError("cannot open " + spec_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const ExperimentSpec spec = experiment_spec_from_json(buffer.str());
  for (const ClassifierKind& kind : spec.classifiers) {
    if (kind.type == ClassifierKind::Type::CKB) checked_epsilon(kind.epsilon);
  }

  const PreparedDataset prepared =
      prepare_corpus_dataset(spec.dataset, spec.bins, corpus_dir);
  const CurveOutputs outputs = run_learning_curve(prepared.data, prepared.model, spec);
  emit_reports(outputs, spec, out_dir);

  bool all_converged = true;
  for (const auto& per_size : outputs.curve.cells) {
    for (const CurveCell& cell : per_size) {
      all_converged &= cell.n_converged() == static_cast<int>(cell.converged.size());
    }
  }
  if (!all_converged) {
    std::cerr << "warning: some replications contained non-converged fits\n";
    if (strict) return kExitNonConverged;
  }
  return kExitOk;
}

int run_mcnemar(const std::string& a_path, const std::string& b_path) {
  const std::vector<PredictionRow> a = load_predictions_csv(a_path);
  const std::vector<PredictionRow> b = load_predictions_csv(b_path);
  if (a.size() != b.size()) throw DataError("prediction files differ in length");
  std::vector<int> preds_a, preds_b, truth;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].id != b[i].id || a[i].truth != b[i].truth) {
      throw DataError("prediction files disagree on instance " + std::to_string(a[i].id));
    }
    preds_a.push_back(a[i].predicted);
    preds_b.push_back(b[i].predicted);
    truth.push_back(a[i].truth);
  }
  const McNemarResult r = mcnemar_test(preds_a, preds_b, truth);
  std::cout << "{\n  \"b\": " << r.b << ",\n  \"c\": " << r.c
            << ",\n  \"statistic\": " << r.statistic << ",\n  \"significant\": "
            << (r.significant ? "true" : "false") << ",\n  \"winner\": \""
            << (r.winner == 0 ? "A" : r.winner == 1 ? "B" : "none") << "\"\n}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotonicity-constrained Bayesian network parameter learning"};
  app.require_subcommand(1);

  std::string data_path, model_path, out_path, report_path, eval_path, predictions_path;
  std::string corpus_dir = "data", spec_path, out_dir = "results", cuts_path;
  std::string dataset, a_path, b_path;
  double epsilon = 0.0, alpha = 1.0, tolerance = 1e-6;
  int bins = 2;
  bool strict = false;
  FitConfig fit_config;

  CLI::App* fit = app.add_subcommand("fit", "Fit CPTs under monotonicity constraints");
  fit->add_option("--data", data_path, "coded CSV matching the model")->required();
  fit->add_option("--model", model_path, "model file (.qm)")->required();
  fit->add_option("--epsilon", epsilon, "global margin in [0, 0.2]");
  fit->add_option("--alpha", fit_config.alpha, "Dirichlet pseudocount");
  fit->add_option("--out", out_path, "CPT JSON destination (default stdout)");
  fit->add_option("--report", report_path, "fit report JSON destination");
  fit->add_option("--eval", eval_path, "coded CSV to score after fitting");
  fit->add_option("--predictions", predictions_path, "prediction CSV destination");
  fit->add_flag("--strict", strict, "exit 2 when any node fails to converge");

  CLI::App* check = app.add_subcommand("check", "Report dominance violations of the MLE");
  check->add_option("--data", data_path, "coded CSV matching the model")->required();
  check->add_option("--model", model_path, "model file (.qm)")->required();
  check->add_option("--epsilon", epsilon, "global margin in [0, 0.2]");
  check->add_option("--alpha", alpha, "Dirichlet pseudocount");
  check->add_option("--tolerance", tolerance, "feasibility tolerance");
  check->add_option("--out", out_path, "violation JSON destination (default stdout)");

  CLI::App* disc = app.add_subcommand("discretize", "Prepare a corpus dataset");
  disc->add_option("--dataset", dataset, "corpus id (auto-mpg, haberman, pima, bcw, car)")
      ->required();
  disc->add_option("--bins", bins, "equal-frequency bins (2, 3, or 5)")->required();
  disc->add_option("--corpus", corpus_dir, "corpus directory");
  disc->add_option("--out", out_path, "coded CSV destination")->required();
  disc->add_option("--cuts", cuts_path, "cut-point sidecar JSON destination");

  CLI::App* curve = app.add_subcommand("curve", "Run a replicated learning-curve experiment");
  curve->add_option("--spec", spec_path, "experiment spec JSON")->required();
  curve->add_option("--corpus", corpus_dir, "corpus directory");
  curve->add_option("--out-dir", out_dir, "report destination directory");
  curve->add_flag("--strict", strict, "exit 2 when any replication fails to converge");

  CLI::App* mcnemar = app.add_subcommand("mcnemar", "Compare two prediction CSVs");
  mcnemar->add_option("--a", a_path, "first prediction CSV")->required();
  mcnemar->add_option("--b", b_path, "second prediction CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      return run_fit(data_path, model_path, epsilon, fit_config, out_path, report_path,
                     eval_path, predictions_path, strict);
    }
    if (check->parsed()) {
      return run_check(data_path, model_path, epsilon, alpha, tolerance, out_path);
    }
    if (disc->parsed()) {
      return run_discretize(dataset, bins, corpus_dir, out_path, cuts_path);
    }
    if (curve->parsed()) return run_curve(spec_path, corpus_dir, out_dir, strict);
    if (mcnemar->parsed()) return run_mcnemar(a_path, b_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
