#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "monobn/bench.hpp"
#include "monobn/classify.hpp"
#include "monobn/constraints.hpp"
#include "monobn/corpus.hpp"
#include "monobn/data.hpp"
#include "monobn/errors.hpp"
#include "monobn/estimation.hpp"
#include "monobn/io.hpp"
#include "monobn/model.hpp"

namespace py = pybind11;
using namespace monobn;

namespace {

FitConfig config_from_kwargs(double alpha, double w0, int max_outer, double grad_tolerance,
                             double feasibility_tolerance) {
  FitConfig config;
  config.alpha = alpha;
  config.w0 = w0;
  config.max_outer = max_outer;
  config.grad_tolerance = grad_tolerance;
  config.feasibility_tolerance = feasibility_tolerance;
  return config;
}

py::dict cpts_to_dict(const QualitativeModel& model, const CptSet& cpts) {
  py::dict out;
  for (size_t v = 0; v < cpts.size(); ++v) {
    py::dict entry;
    py::list parents;
    for (int p : model.parents_of(static_cast<int>(v))) {
      parents.append(model.variable(p).name);
    }
    entry["parents"] = parents;
    entry["cardinality"] = cpts[v].cardinality;
    entry["rows"] = cpts[v].rows;
    out[py::str(cpts[v].node)] = entry;
  }
  return out;
}

py::dict report_to_dict(const FitReport& report) {
  py::dict nodes;
  for (const NodeFitReport& n : report.nodes) {
    py::dict entry;
    entry["outer_iterations"] = n.outer_iterations;
    entry["inner_iterations"] = n.inner_iterations;
    entry["final_w"] = n.final_w;
    entry["max_delta"] = n.max_delta;
    entry["objective"] = n.objective;
    entry["loglik"] = n.loglik;
    entry["used_penalty_loop"] = n.used_penalty_loop;
    entry["converged"] = n.converged;
    nodes[py::str(n.node)] = entry;
  }
  py::dict out;
  out["nodes"] = nodes;
  out["all_converged"] = report.all_converged();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bayesian network CPT learning under stochastic-dominance "
            "monotonicity constraints";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<DataError>(m, "DataError");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<InferenceError>(m, "InferenceError");

  py::class_<QualitativeModel>(m, "QualitativeModel")
      .def_readonly("name", &QualitativeModel::name)
      .def_readonly("class_variable", &QualitativeModel::class_variable)
      .def_property_readonly("variables",
                             [](const QualitativeModel& model) {
                               py::list out;
                               for (const Variable& v : model.variables) {
                                 out.append(py::make_tuple(v.name, v.cardinality));
                               }
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const QualitativeModel& model) {
                               py::list out;
                               for (const Edge& e : model.edges) {
                                 const char* sign =
                                     e.sign == MonotoneSign::Isotone    ? "q+"
                                     : e.sign == MonotoneSign::Antitone ? "q-"
                                                                        : "none";
                                 out.append(py::make_tuple(e.parent, e.child, sign));
                               }
                               return out;
                             })
      .def("__repr__", [](const QualitativeModel& model) {
        std::ostringstream s;
        s << "QualitativeModel(" << model.name << ", " << model.variables.size()
          << " variables, " << model.edges.size() << " edges)";
        return s.str();
      });

  py::class_<DiscreteDataset>(m, "DiscreteDataset")
      .def_static(
          "from_rows",
          [](const std::vector<std::pair<std::string, int>>& schema,
             const std::string& class_column, const std::vector<std::vector<int>>& rows) {
            DiscreteDataset d;
            for (const auto& [name, card] : schema) d.schema.push_back({name, card});
            d.class_col = d.column_index(class_column);
            if (d.class_col < 0) throw DataError("unknown class column " + class_column);
            d.rows = rows;
            return d;
          },
          py::arg("schema"), py::arg("class_column"), py::arg("rows"))
      .def("__len__", [](const DiscreteDataset& d) { return d.rows.size(); })
      .def_property_readonly("columns",
                             [](const DiscreteDataset& d) {
                               py::list out;
                               for (const ColumnSpec& c : d.schema) out.append(c.name);
                               return out;
                             })
      .def_property_readonly("cardinalities",
                             [](const DiscreteDataset& d) {
                               py::list out;
                               for (const ColumnSpec& c : d.schema) out.append(c.cardinality);
                               return out;
                             })
      .def_property_readonly("class_column",
                             [](const DiscreteDataset& d) {
                               return d.class_col >= 0
                                          ? d.schema[static_cast<size_t>(d.class_col)].name
                                          : "";
                             })
      .def_readonly("rows", &DiscreteDataset::rows);

  py::class_<TrainedClassifier>(m, "TrainedClassifier")
      .def_property_readonly("kind",
                             [](const TrainedClassifier& c) { return c.kind.name(); })
      .def_readonly("converged", &TrainedClassifier::converged)
      .def("posterior",
           [](const TrainedClassifier& c, const std::vector<int>& row) {
             return posterior(c, row);
           })
      .def("predict",
           [](const TrainedClassifier& c, const std::vector<int>& row) {
             return predict(c, row);
           })
      .def("accuracy", [](const TrainedClassifier& c, const DiscreteDataset& test) {
        return evaluate_accuracy(c, test);
      });

  m.def("parse_model",
        [](const std::string& text) {
          std::istringstream in(text);
          return parse_qualitative_model(in);
        },
        py::arg("text"), "Parse a model from DSL text");
  m.def("load_model", &parse_qualitative_model_file, py::arg("path"));

  m.def("load_corpus",
        [](const std::string& id, int bins, const std::string& corpus_dir) {
          PreparedDataset p = prepare_corpus_dataset(id, bins, corpus_dir);
          py::dict info;
          info["rows_kept"] = p.rows_kept;
          info["rows_dropped"] = p.rows_dropped;
          info["cutpoints"] = p.cutpoints;
          return py::make_tuple(p.data, p.model, info);
        },
        py::arg("id"), py::arg("bins"), py::arg("corpus_dir") = "data",
        "Prepare a corpus dataset: (dataset, model, info)");
  m.def("corpus_ids", &corpus_ids);

  m.def("equal_frequency_cutpoints", &equal_frequency_cutpoints, py::arg("values"),
        py::arg("bins"));

  m.def("chain_length", [](const QualitativeModel& model, const std::string& node) {
    const int idx = model.var_index(node);
    if (idx < 0) throw DomainError("unknown variable " + node);
    return chain_length(model, idx);
  });

  m.def("constraints",
        [](const QualitativeModel& model, double epsilon) {
          const ConstraintSet set = generate_constraints(model, epsilon);
          py::list out;
          for (const NodeConstraints& nc : set.nodes) {
            for (const DominanceConstraint& c : nc.items) {
              py::dict d;
              d["node"] = model.variable(c.node).name;
              d["j_hi"] = c.j_hi;
              d["j_lo"] = c.j_lo;
              d["kc"] = c.kc;
              d["epsilon"] = c.epsilon;
              out.append(d);
            }
          }
          return out;
        },
        py::arg("model"), py::arg("epsilon") = 0.0);

  m.def("fit_network",
        [](const DiscreteDataset& data, const QualitativeModel& model, double epsilon,
           double alpha, double w0, int max_outer, double grad_tolerance,
           double feasibility_tolerance) {
          const auto [cpts, report] =
              fit_network(data, model, epsilon,
                          config_from_kwargs(alpha, w0, max_outer, grad_tolerance,
                                             feasibility_tolerance));
          return py::make_tuple(cpts_to_dict(model, cpts), report_to_dict(report));
        },
        py::arg("data"), py::arg("model"), py::arg("epsilon") = 0.0,
        py::arg("alpha") = 1.0, py::arg("w0") = 10.0, py::arg("max_outer") = 12,
        py::arg("grad_tolerance") = 1e-6, py::arg("feasibility_tolerance") = 1e-6,
        "Constrained MAP fit: (cpts, report)");

  m.def("check_feasibility",
        [](const DiscreteDataset& data, const QualitativeModel& model, double epsilon,
           double alpha, double tolerance) {
          const SufficientStats stats = count_stats(data, model, alpha);
          const CptSet cpts = mle_theta(stats, model);
          const ConstraintSet set = generate_constraints(model, epsilon);
          const FeasibilityReport report = check_feasibility(cpts, set, tolerance);
          py::list violations;
          for (const Violation& v : report.violations) {
            py::dict d;
            d["node"] = model.variable(v.node).name;
            d["j_hi"] = v.j_hi;
            d["j_lo"] = v.j_lo;
            d["kc"] = v.kc;
            d["delta"] = v.delta;
            violations.append(d);
          }
          py::dict out;
          out["feasible"] = report.feasible;
          out["violations"] = violations;
          return out;
        },
        py::arg("data"), py::arg("model"), py::arg("epsilon") = 0.0, py::arg("alpha") = 1.0,
        py::arg("tolerance") = 1e-6,
        "Dominance violations of the Laplace-smoothed MLE");

  m.def("train",
        [](const std::string& kind, const DiscreteDataset& data,
           const QualitativeModel& model, double alpha) {
          FitConfig config;
          config.alpha = alpha;
          return train(ClassifierKind::parse(kind), data, model, config);
        },
        py::arg("kind"), py::arg("data"), py::arg("model"), py::arg("alpha") = 1.0,
        "Train ZR, NB, KB, or CKB<eps>");

  m.def("mcnemar",
        [](const std::vector<int>& preds_a, const std::vector<int>& preds_b,
           const std::vector<int>& truth) {
          const McNemarResult r = mcnemar_test(preds_a, preds_b, truth);
          py::dict out;
          out["b"] = r.b;
          out["c"] = r.c;
          out["statistic"] = r.statistic;
          out["significant"] = r.significant;
          out["winner"] = r.winner == 0 ? "A" : r.winner == 1 ? "B" : "none";
          return out;
        },
        py::arg("preds_a"), py::arg("preds_b"), py::arg("truth"));

  m.def("learning_curve",
        [](const DiscreteDataset& data, const QualitativeModel& model,
           const std::vector<std::string>& classifiers, const std::vector<int>& sizes,
           int replications, uint64_t master_seed) {
          ExperimentSpec spec;
          spec.dataset = "in-memory";
          for (const std::string& c : classifiers) {
            spec.classifiers.push_back(ClassifierKind::parse(c));
          }
          spec.sizes = sizes;
          spec.replications = replications;
          spec.master_seed = master_seed;
          const CurveOutputs out = run_learning_curve(data, model, spec);
          py::dict curve;
          for (size_t ci = 0; ci < out.curve.classifier_names.size(); ++ci) {
            py::dict per_m;
            for (size_t si = 0; si < out.curve.sizes.size(); ++si) {
              per_m[py::int_(out.curve.sizes[si])] = out.curve.cells[ci][si].mean();
            }
            curve[py::str(out.curve.classifier_names[ci])] = per_m;
          }
          return curve;
        },
        py::arg("data"), py::arg("model"), py::arg("classifiers"), py::arg("sizes"),
        py::arg("replications") = 50, py::arg("master_seed") = 1,
        "Mean accuracy per classifier per training size");

  m.attr("__version__") = "0.1.0";
}
