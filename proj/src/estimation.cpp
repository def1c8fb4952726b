#include "monobn/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monobn/errors.hpp"
#include "monobn/lbfgs.hpp"

namespace monobn {

namespace {

double row_log_sum_exp(std::span<const double> mu) {
  double m = mu[0];
  for (double x : mu) m = std::max(m, x);
  double s = 0.0;
  for (double x : mu) s += std::exp(x - m);
  return m + std::log(s);
}

void softmax_row(std::span<const double> mu, std::span<double> theta) {
  double m = mu[0];
  for (double x : mu) m = std::max(m, x);
  double z = 0.0;
  for (size_t k = 0; k < mu.size(); ++k) {
    theta[k] = std::exp(mu[k] - m);
    z += theta[k];
  }
  for (size_t k = 0; k < mu.size(); ++k) theta[k] /= z;
}

double max_violation(const NodeTable& theta, const NodeConstraints& constraints) {
  double worst = -std::numeric_limits<double>::infinity();
  std::vector<double> cdf_hi, cdf_lo;
  for (const DominanceConstraint& c : constraints.items) {
    double f_hi = 0.0, f_lo = 0.0;
    for (int k = 0; k <= c.kc; ++k) {
      f_hi += theta.at(c.j_hi, k);
      f_lo += theta.at(c.j_lo, k);
    }
    worst = std::max(worst, f_hi - f_lo + c.epsilon);
  }
  return worst;
}

}  // namespace

SufficientStats count_stats(const DiscreteDataset& data, const QualitativeModel& model,
                            double alpha) {
  if (alpha < 0.0) throw DomainError("pseudocount must be non-negative");
  SufficientStats stats;
  stats.alpha = alpha;

  std::vector<int> col_of(model.variables.size(), -1);
  for (size_t v = 0; v < model.variables.size(); ++v) {
    col_of[v] = data.column_index(model.variables[v].name);
    if (col_of[v] < 0) {
      throw DataError("dataset has no column for variable " + model.variables[v].name);
    }
  }

  std::vector<ParentConfigIndexer> indexers;
  std::vector<std::vector<int>> parent_lists;
  for (size_t v = 0; v < model.variables.size(); ++v) {
    indexers.push_back(ParentConfigIndexer::for_node(model, static_cast<int>(v)));
    parent_lists.push_back(model.parents_of(static_cast<int>(v)));
    stats.nodes.emplace_back(indexers.back().count(), model.variables[v].cardinality, alpha);
  }

  std::vector<int> parent_values;
  for (size_t r = 0; r < data.rows.size(); ++r) {
    const auto& row = data.rows[r];
    for (size_t v = 0; v < model.variables.size(); ++v) {
      const int value = row[static_cast<size_t>(col_of[v])];
      if (value < 0 || value >= model.variables[v].cardinality) {
        throw DataError("row " + std::to_string(r + 1) + ", column " +
                        model.variables[v].name + ": value " + std::to_string(value) +
                        " out of range");
      }
      parent_values.clear();
      for (int p : parent_lists[v]) {
        parent_values.push_back(row[static_cast<size_t>(col_of[static_cast<size_t>(p)])]);
      }
      const int j = indexers[v].index_of(parent_values);
      stats.nodes[v].at(j, value) += 1.0;
    }
  }
  return stats;
}

std::vector<std::vector<double>> mle_rows(const NodeTable& stats) {
  std::vector<std::vector<double>> rows(static_cast<size_t>(stats.q));
  for (int j = 0; j < stats.q; ++j) {
    double total = 0.0;
    for (int k = 0; k < stats.r; ++k) total += stats.at(j, k);
    if (total <= 0.0) {
      throw DomainError("mle_theta: zero row total at parent configuration " +
                        std::to_string(j));
    }
    auto& row = rows[static_cast<size_t>(j)];
    row.resize(static_cast<size_t>(stats.r));
    for (int k = 0; k < stats.r; ++k) row[static_cast<size_t>(k)] = stats.at(j, k) / total;
  }
  return rows;
}

CptSet mle_theta(const SufficientStats& stats, const QualitativeModel& model) {
  CptSet cpts;
  for (size_t v = 0; v < model.variables.size(); ++v) {
    Cpt cpt;
    cpt.node = model.variables[v].name;
    cpt.cardinality = model.variables[v].cardinality;
    cpt.rows = mle_rows(stats.nodes[v]);
    cpts.push_back(std::move(cpt));
  }
  return cpts;
}

NodeTable softmax_theta(const NodeTable& mu) {
  NodeTable theta(mu.q, mu.r);
  for (int j = 0; j < mu.q; ++j) softmax_row(mu.row(j), theta.row(j));
  return theta;
}

NodeTable logits_of_theta(const NodeTable& theta) {
  NodeTable mu(theta.q, theta.r);
  for (int j = 0; j < theta.q; ++j) {
    for (int k = 0; k < theta.r; ++k) {
      const double t = theta.at(j, k);
      if (!(t > 0.0)) {
        throw DomainError("logits_of_theta: non-positive probability at (" +
                          std::to_string(j) + ", " + std::to_string(k) + ")");
      }
      mu.at(j, k) = std::log(t);
    }
  }
  return mu;
}

double log_likelihood(const NodeTable& mu, const NodeTable& stats) {
  double value = 0.0;
  for (int j = 0; j < mu.q; ++j) {
    const double lnz = row_log_sum_exp(mu.row(j));
    for (int k = 0; k < mu.r; ++k) value += stats.at(j, k) * (mu.at(j, k) - lnz);
  }
  return value;
}

NodeTable gradient_loglik(const NodeTable& mu, const NodeTable& stats) {
  NodeTable grad(mu.q, mu.r);
  std::vector<double> theta(static_cast<size_t>(mu.r));
  for (int j = 0; j < mu.q; ++j) {
    softmax_row(mu.row(j), theta);
    double row_total = 0.0;
    for (int k = 0; k < mu.r; ++k) row_total += stats.at(j, k);
    for (int k = 0; k < mu.r; ++k) {
      grad.at(j, k) = stats.at(j, k) - theta[static_cast<size_t>(k)] * row_total;
    }
  }
  return grad;
}

std::vector<PenaltyTerm> penalty_terms(const NodeTable& mu, const NodeConstraints& constraints) {
  const NodeTable theta = softmax_theta(mu);
  std::vector<PenaltyTerm> terms;
  terms.reserve(constraints.items.size());
  for (const DominanceConstraint& c : constraints.items) {
    double f_hi = 0.0, f_lo = 0.0;
    for (int k = 0; k <= c.kc; ++k) {
      f_hi += theta.at(c.j_hi, k);
      f_lo += theta.at(c.j_lo, k);
    }
    const double delta = f_hi - f_lo + c.epsilon;
    terms.push_back({c, delta, delta > 0.0 ? delta * delta : 0.0});
  }
  return terms;
}

Objective penalized_objective(const NodeTable& mu, const NodeTable& stats,
                              const NodeConstraints* constraints, double w) {
  if (w < 0.0) throw DomainError("penalty weight must be non-negative");
  Objective obj;
  obj.grad = NodeTable(mu.q, mu.r);

  // Likelihood part.
  NodeTable theta = softmax_theta(mu);
  for (int j = 0; j < mu.q; ++j) {
    const double lnz = row_log_sum_exp(mu.row(j));
    double row_total = 0.0;
    for (int k = 0; k < mu.r; ++k) row_total += stats.at(j, k);
    for (int k = 0; k < mu.r; ++k) {
      obj.loglik += stats.at(j, k) * (mu.at(j, k) - lnz);
      obj.grad.at(j, k) = stats.at(j, k) - theta.at(j, k) * row_total;
    }
  }

  // Penalty part: dF_j(kc)/dmu_jk = theta_jk * (1(k <= kc) - F_j(kc)).
  if (constraints != nullptr && w > 0.0) {
    for (const DominanceConstraint& c : constraints->items) {
      double f_hi = 0.0, f_lo = 0.0;
      for (int k = 0; k <= c.kc; ++k) {
        f_hi += theta.at(c.j_hi, k);
        f_lo += theta.at(c.j_lo, k);
      }
      const double delta = f_hi - f_lo + c.epsilon;
      if (delta <= 0.0) continue;
      obj.penalty += delta * delta;
      const double scale = 2.0 * w * delta;
      for (int k = 0; k < mu.r; ++k) {
        const double ind = k <= c.kc ? 1.0 : 0.0;
        obj.grad.at(c.j_hi, k) -= scale * theta.at(c.j_hi, k) * (ind - f_hi);
        obj.grad.at(c.j_lo, k) += scale * theta.at(c.j_lo, k) * (ind - f_lo);
      }
    }
  }
  obj.value = obj.loglik - w * obj.penalty;
  return obj;
}

bool FitReport::all_converged() const {
  for (const NodeFitReport& n : nodes) {
    if (!n.converged) return false;
  }
  return true;
}

std::pair<std::vector<std::vector<double>>, NodeFitReport> fit_node(
    const NodeTable& stats, const NodeConstraints* constraints, const FitConfig& config,
    const std::string& node_name) {
  NodeFitReport report;
  report.node = node_name;

  std::vector<std::vector<double>> mle = mle_rows(stats);
  if (constraints == nullptr || constraints->items.empty()) {
    report.converged = true;
    NodeTable mu(stats.q, stats.r);
    for (int j = 0; j < stats.q; ++j) {
      for (int k = 0; k < stats.r; ++k) {
        mu.at(j, k) = std::log(std::max(mle[static_cast<size_t>(j)][static_cast<size_t>(k)], 1e-12));
      }
    }
    report.loglik = log_likelihood(mu, stats);
    report.objective = report.loglik;
    return {std::move(mle), report};
  }

  NodeTable mu(stats.q, stats.r);
  for (int j = 0; j < stats.q; ++j) {
    for (int k = 0; k < stats.r; ++k) {
      mu.at(j, k) = std::log(std::max(mle[static_cast<size_t>(j)][static_cast<size_t>(k)], 1e-12));
    }
  }

  double total_count = 0.0;
  for (double n : stats.v) total_count += n;
  const double grad_tol = config.grad_tolerance * std::max(1.0, total_count);

  NodeTable theta = softmax_theta(mu);
  double worst = max_violation(theta, *constraints);
  report.max_delta = worst;
  report.loglik = log_likelihood(mu, stats);
  report.objective = report.loglik;
  if (worst <= config.feasibility_tolerance) {
    // Unconstrained MLE already satisfies the constraints; return it as-is.
    report.converged = true;
    return {std::move(mle), report};
  }

  report.used_penalty_loop = true;
  double w = config.w0;
  bool feasible = false;

  LbfgsOptions inner;
  inner.depth = config.lbfgs_depth;
  inner.grad_tolerance = grad_tol;
  inner.max_iterations = config.inner_iteration_cap;

  std::vector<double> x = mu.v;
  const NodeTable* stats_ptr = &stats;
  for (int outer = 1; outer <= config.max_outer; ++outer) {
    report.outer_iterations = outer;
    const double w_now = w;
    auto objective = [stats_ptr, constraints, w_now](std::span<const double> xs,
                                                     std::span<double> gs) {
      NodeTable m(stats_ptr->q, stats_ptr->r);
      m.v.assign(xs.begin(), xs.end());
      Objective obj = penalized_objective(m, *stats_ptr, constraints, w_now);
      for (size_t i = 0; i < gs.size(); ++i) gs[i] = -obj.grad.v[i];
      return -obj.value;
    };
    LbfgsResult inner_result = lbfgs_minimize(x, objective, inner);
    report.inner_iterations += inner_result.iterations;

    mu.v = x;
    theta = softmax_theta(mu);
    worst = max_violation(theta, *constraints);
    report.max_delta = worst;
    report.final_w = w;

    if (inner_result.status == LbfgsStatus::Converged) {
      if (worst <= config.feasibility_tolerance) {
        feasible = true;
        break;
      }
      w *= config.w_escalation;
    } else {
      // Inner optimizer failure: nudge the penalty weight to reshape the
      // objective and retry from the current point.
      w *= config.w_failure_bump;
    }
  }

  report.converged = feasible;
  report.loglik = log_likelihood(mu, stats);
  Objective final_obj = penalized_objective(mu, stats, constraints, report.final_w);
  report.objective = final_obj.value;

  std::vector<std::vector<double>> rows(static_cast<size_t>(stats.q));
  for (int j = 0; j < stats.q; ++j) {
    rows[static_cast<size_t>(j)].assign(theta.row(j).begin(), theta.row(j).end());
  }
  return {std::move(rows), report};
}

std::pair<CptSet, FitReport> fit_network(const DiscreteDataset& data,
                                         const QualitativeModel& model, double epsilon,
                                         const FitConfig& config) {
  const SufficientStats stats = count_stats(data, model, config.alpha);
  const ConstraintSet constraints = generate_constraints(model, epsilon);

  CptSet cpts;
  FitReport report;
  report.config = config;
  for (size_t v = 0; v < model.variables.size(); ++v) {
    const NodeConstraints* nc = constraints.find(static_cast<int>(v));
    auto [rows, node_report] =
        fit_node(stats.nodes[v], nc, config, model.variables[v].name);
    Cpt cpt;
    cpt.node = model.variables[v].name;
    cpt.cardinality = model.variables[v].cardinality;
    cpt.rows = std::move(rows);
    cpts.push_back(std::move(cpt));
    report.nodes.push_back(std::move(node_report));
  }
  return {std::move(cpts), std::move(report)};
}

}  // namespace monobn
