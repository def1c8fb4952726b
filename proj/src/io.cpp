#include "monobn/io.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "monobn/bench.hpp"
#include "monobn/errors.hpp"

namespace monobn {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string cpts_to_json(const QualitativeModel& model, const CptSet& cpts, double epsilon) {
  ordered_json doc;
  doc["network"] = model.name;
  doc["epsilon"] = epsilon;
  ordered_json nodes = ordered_json::object();
  for (size_t v = 0; v < cpts.size(); ++v) {
    ordered_json entry;
    std::vector<std::string> parents;
    for (int p : model.parents_of(static_cast<int>(v))) {
      parents.push_back(model.variable(p).name);
    }
    entry["parents"] = parents;
    entry["cardinality"] = cpts[v].cardinality;
    entry["rows"] = cpts[v].rows;
    nodes[cpts[v].node] = std::move(entry);
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

std::string fit_report_to_json(const FitReport& report) {
  ordered_json doc;
  doc["config"] = {{"alpha", report.config.alpha},
                   {"w0", report.config.w0},
                   {"w_escalation", report.config.w_escalation},
                   {"w_failure_bump", report.config.w_failure_bump},
                   {"max_outer", report.config.max_outer},
                   {"grad_tolerance", report.config.grad_tolerance},
                   {"feasibility_tolerance", report.config.feasibility_tolerance}};
  doc["optimizer"] = {{"method", "l-bfgs"},
                      {"depth", report.config.lbfgs_depth},
                      {"line_search", "backtracking-armijo"},
                      {"iteration_cap", report.config.inner_iteration_cap}};
  ordered_json nodes = ordered_json::object();
  for (const NodeFitReport& n : report.nodes) {
    nodes[n.node] = {{"outer_iterations", n.outer_iterations},
                     {"inner_iterations", n.inner_iterations},
                     {"final_w", n.final_w},
                     {"max_delta", n.max_delta},
                     {"objective", n.objective},
                     {"loglik", n.loglik},
                     {"used_penalty_loop", n.used_penalty_loop},
                     {"converged", n.converged}};
  }
  doc["nodes"] = std::move(nodes);
  doc["all_converged"] = report.all_converged();
  return doc.dump(2) + "\n";
}

std::string violations_to_json(const QualitativeModel& model,
                               const std::vector<Violation>& violations) {
  ordered_json arr = ordered_json::array();
  for (const Violation& v : violations) {
    arr.push_back({{"node", model.variable(v.node).name},
                   {"j_hi", v.j_hi},
                   {"j_lo", v.j_lo},
                   {"kc", v.kc},
                   {"delta", v.delta}});
  }
  return arr.dump(2) + "\n";
}

std::string cutpoints_to_json(const std::map<std::string, std::vector<double>>& cuts) {
  ordered_json doc = ordered_json::object();
  for (const auto& [column, values] : cuts) doc[column] = values;
  return doc.dump(2) + "\n";
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("spec file: ") + e.what());
  }
  ExperimentSpec spec = ExperimentSpec::defaults();
  try {
    spec.dataset = doc.at("dataset").get<std::string>();
    spec.bins = doc.at("bins").get<int>();
    if (doc.contains("classifiers")) {
      spec.classifiers.clear();
      for (const auto& c : doc["classifiers"]) {
        spec.classifiers.push_back(ClassifierKind::parse(c.get<std::string>()));
      }
    }
    if (doc.contains("sizes")) {
      spec.sizes = doc["sizes"].get<std::vector<int>>();
    }
    if (doc.contains("replications")) spec.replications = doc["replications"].get<int>();
    if (doc.contains("master_seed")) spec.master_seed = doc["master_seed"].get<uint64_t>();
    if (doc.contains("test_fraction")) {
      spec.test_fraction = doc["test_fraction"].get<double>();
    }
    if (doc.contains("fit")) {
      const auto& fit = doc["fit"];
      if (fit.contains("alpha")) spec.fit.alpha = fit["alpha"].get<double>();
      if (fit.contains("w0")) spec.fit.w0 = fit["w0"].get<double>();
      if (fit.contains("w_escalation")) {
        spec.fit.w_escalation = fit["w_escalation"].get<double>();
      }
      if (fit.contains("w_failure_bump")) {
        spec.fit.w_failure_bump = fit["w_failure_bump"].get<double>();
      }
      if (fit.contains("max_outer")) spec.fit.max_outer = fit["max_outer"].get<int>();
      if (fit.contains("grad_tolerance")) {
        spec.fit.grad_tolerance = fit["grad_tolerance"].get<double>();
      }
      if (fit.contains("feasibility_tolerance")) {
        spec.fit.feasibility_tolerance = fit["feasibility_tolerance"].get<double>();
      }
      if (fit.contains("inner_iteration_cap")) {
        spec.fit.inner_iteration_cap = fit["inner_iteration_cap"].get<int>();
      }
      if (fit.contains("lbfgs_depth")) spec.fit.lbfgs_depth = fit["lbfgs_depth"].get<int>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("spec file: ") + e.what());
  }
  return spec;
}

std::string experiment_manifest_json(const ExperimentSpec& spec) {
  ordered_json doc;
  std::vector<std::string> names;
  for (const ClassifierKind& c : spec.classifiers) names.push_back(c.name());
  doc["spec"] = {{"dataset", spec.dataset},
                 {"bins", spec.bins},
                 {"classifiers", names},
                 {"sizes", spec.sizes},
                 {"replications", spec.replications},
                 {"master_seed", spec.master_seed},
                 {"test_fraction", spec.test_fraction},
                 {"fit",
                  {{"alpha", spec.fit.alpha},
                   {"w0", spec.fit.w0},
                   {"w_escalation", spec.fit.w_escalation},
                   {"w_failure_bump", spec.fit.w_failure_bump},
                   {"max_outer", spec.fit.max_outer},
                   {"grad_tolerance", spec.fit.grad_tolerance},
                   {"feasibility_tolerance", spec.fit.feasibility_tolerance},
                   {"inner_iteration_cap", spec.fit.inner_iteration_cap},
                   {"lbfgs_depth", spec.fit.lbfgs_depth}}}};
  doc["seed_scheme"] =
      "stratified split: splitmix64 chain on (master_seed, stream 0x53504C49); "
      "training sample for size m, replication r: splitmix64 chain on "
      "(master_seed, stream 0x53414D50, m, r)";
  doc["version"] = "0.1.0";
  return doc.dump(2) + "\n";
}

void write_predictions_csv(const std::vector<PredictionRow>& rows, std::ostream& out) {
  out << "instance,true,predicted,p1\n";
  char buf[64];
  for (const PredictionRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.10g", r.p_positive);
    out << r.id << ',' << r.truth << ',' << r.predicted << ',' << buf << '\n';
  }
}

std::vector<PredictionRow> load_predictions_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<PredictionRow> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;  // header
    PredictionRow r;
    if (std::sscanf(line.c_str(), "%lld,%d,%d,%lf", &r.id, &r.truth, &r.predicted,
                    &r.p_positive) != 4) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed prediction row");
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace monobn
