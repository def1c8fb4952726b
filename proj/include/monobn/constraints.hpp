#pragma once

#include <span>
#include <vector>

#include "monobn/model.hpp"

namespace monobn {

// One margin-modified first-order-stochastic-dominance inequality: the child
// distribution at parent configuration j_hi must dominate the one at j_lo at
// cumulative index kc with slack epsilon. The two configurations differ in
// exactly one annotated parent, by one state step.
struct DominanceConstraint {
  int node = -1;
  int j_hi = -1;
  int j_lo = -1;
  int kc = 0;
  double epsilon = 0.0;
};

struct NodeConstraints {
  int node = -1;
  double epsilon_node = 0.0;  // global epsilon / chain length
  std::vector<DominanceConstraint> items;
};

struct ConstraintSet {
  double global_epsilon = 0.0;
  std::vector<NodeConstraints> nodes;  // one entry per node with >= 1 annotated parent

  const NodeConstraints* find(int node) const;
  size_t total() const;
};

// Manhattan distance between the minimum- and maximum-influence corners of a
// node's CPT: the product of (cardinality - 1) over the node's annotated
// parents. Throws DomainError when the node has no annotated parent.
int chain_length(const QualitativeModel& model, int node);

// Emits, for every node, one constraint per annotated parent, adjacent value
// pair of that parent, configuration of the remaining parents, and cumulative
// index. Per-node margin is global_epsilon / chain_length(node).
ConstraintSet generate_constraints(const QualitativeModel& model, double global_epsilon);

// Signed violation: cdf(hi)[kc] - cdf(lo)[kc] + epsilon. Non-positive iff the
// margin-modified constraint holds. Rows must each sum to 1 within 1e-6.
double violation_delta(std::span<const double> hi_row, std::span<const double> lo_row,
                       int kc, double epsilon);

// True iff p1 dominates p2 with margin: F1(y) + epsilon <= F2(y) for every
// state but the top one.
bool fsd_dominates(std::span<const double> p1, std::span<const double> p2,
                   double epsilon);

struct Violation {
  int node = -1;
  int j_hi = -1;
  int j_lo = -1;
  int kc = 0;
  double delta = 0.0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;  // sorted by descending delta
};

FeasibilityReport check_feasibility(const CptSet& cpts, const ConstraintSet& constraints,
                                    double tolerance = 1e-6);

}  // namespace monobn
