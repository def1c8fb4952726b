#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monobn/constraints.hpp"
#include "monobn/data.hpp"
#include "monobn/model.hpp"

namespace monobn {

// Dense q x r table of per-node quantities: counts, logits, probabilities,
// or gradients, depending on context.
struct NodeTable {
  int q = 0;
  int r = 0;
  std::vector<double> v;  // row-major

  NodeTable() = default;
  NodeTable(int q_, int r_, double fill = 0.0)
      : q(q_), r(r_), v(static_cast<size_t>(q_) * static_cast<size_t>(r_), fill) {}

  double& at(int j, int k) { return v[static_cast<size_t>(j) * static_cast<size_t>(r) + static_cast<size_t>(k)]; }
  double at(int j, int k) const { return v[static_cast<size_t>(j) * static_cast<size_t>(r) + static_cast<size_t>(k)]; }
  std::span<double> row(int j) { return {v.data() + static_cast<size_t>(j) * static_cast<size_t>(r), static_cast<size_t>(r)}; }
  std::span<const double> row(int j) const { return {v.data() + static_cast<size_t>(j) * static_cast<size_t>(r), static_cast<size_t>(r)}; }
};

// Dirichlet-augmented counts N_ijk, one table per model variable.
struct SufficientStats {
  double alpha = 1.0;
  std::vector<NodeTable> nodes;
};

// Observed counts plus the pseudocount alpha in every cell. Throws DataError
// (naming row and column) on out-of-range values.
SufficientStats count_stats(const DiscreteDataset& data, const QualitativeModel& model,
                            double alpha);

// theta_jk = N_jk / sum_k' N_jk'. Throws DomainError on a zero row total.
std::vector<std::vector<double>> mle_rows(const NodeTable& stats);
CptSet mle_theta(const SufficientStats& stats, const QualitativeModel& model);

// Softmax reparameterization per row, computed with max-subtraction.
NodeTable softmax_theta(const NodeTable& mu);
// One valid preimage: mu = ln theta. Throws DomainError on non-positive theta.
NodeTable logits_of_theta(const NodeTable& theta);

// J_L = sum_jk N_jk (mu_jk - ln sum_k' exp(mu_jk')).
double log_likelihood(const NodeTable& mu, const NodeTable& stats);
// dJ_L/dmu_jk = N_jk - theta_jk * sum_k' N_jk'.
NodeTable gradient_loglik(const NodeTable& mu, const NodeTable& stats);

struct PenaltyTerm {
  DominanceConstraint constraint;
  double delta = 0.0;
  double value = 0.0;  // delta^2 when delta > 0, else 0
};

std::vector<PenaltyTerm> penalty_terms(const NodeTable& mu, const NodeConstraints& constraints);

// J = J_L - w * sum of penalties, with its exact gradient.
struct Objective {
  double value = 0.0;
  double loglik = 0.0;
  double penalty = 0.0;
  NodeTable grad;
};

Objective penalized_objective(const NodeTable& mu, const NodeTable& stats,
                              const NodeConstraints* constraints, double w);

struct FitConfig {
  double alpha = 1.0;         // Dirichlet pseudocount (Laplace)
  double w0 = 10.0;           // initial penalty weight
  double w_escalation = 10.0; // multiplier when converged infeasible
  double w_failure_bump = 1.5;// multiplier when the inner optimizer fails
  int max_outer = 12;
  double grad_tolerance = 1e-6;  // scaled by the node's total count
  double feasibility_tolerance = 1e-6;
  int inner_iteration_cap = 500;
  int lbfgs_depth = 10;
};

struct NodeFitReport {
  std::string node;
  int outer_iterations = 0;
  int inner_iterations = 0;
  double final_w = 0.0;
  double max_delta = 0.0;      // over the node's constraints; 0 when none
  double objective = 0.0;      // final penalized objective
  double loglik = 0.0;
  bool used_penalty_loop = false;
  bool converged = true;
};

struct FitReport {
  FitConfig config;
  std::vector<NodeFitReport> nodes;

  bool all_converged() const;
};

// Constrained fit for one node: start at the unconstrained MLE, return it
// when feasible, otherwise maximize the penalized objective with an
// escalating weight until the constraints hold within tolerance.
std::pair<std::vector<std::vector<double>>, NodeFitReport> fit_node(
    const NodeTable& stats, const NodeConstraints* constraints, const FitConfig& config,
    const std::string& node_name = {});

// Fits every node independently; nodes without constraints take the
// closed-form MLE path. Deterministic given identical inputs.
std::pair<CptSet, FitReport> fit_network(const DiscreteDataset& data,
                                         const QualitativeModel& model, double epsilon,
                                         const FitConfig& config = {});

}  // namespace monobn
