#include "monobn/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monobn/errors.hpp"

namespace monobn {

const NodeConstraints* ConstraintSet::find(int node) const {
  for (const NodeConstraints& nc : nodes) {
    if (nc.node == node) return &nc;
  }
  return nullptr;
}

size_t ConstraintSet::total() const {
  size_t n = 0;
  for (const NodeConstraints& nc : nodes) n += nc.items.size();
  return n;
}

int chain_length(const QualitativeModel& model, int node) {
  const auto parents = model.parents_of(node);
  const auto signs = model.parent_signs_of(node);
  int d1 = 1;
  bool any = false;
  for (size_t i = 0; i < parents.size(); ++i) {
    if (signs[i] == MonotoneSign::Unannotated) continue;
    any = true;
    d1 *= model.variable(parents[i]).cardinality - 1;
  }
  if (!any) {
    throw DomainError("chain_length: node " + model.variable(node).name +
                      " has no annotated parent");
  }
  return d1;
}

ConstraintSet generate_constraints(const QualitativeModel& model, double global_epsilon) {
  if (global_epsilon < 0.0) throw DomainError("epsilon must be non-negative");
  ConstraintSet set;
  set.global_epsilon = global_epsilon;

  for (int node = 0; node < static_cast<int>(model.variables.size()); ++node) {
    const auto parents = model.parents_of(node);
    const auto signs = model.parent_signs_of(node);
    bool annotated = false;
    for (MonotoneSign s : signs) annotated |= (s != MonotoneSign::Unannotated);
    if (!annotated) continue;

    NodeConstraints nc;
    nc.node = node;
    nc.epsilon_node = global_epsilon / chain_length(model, node);

    const ParentConfigIndexer indexer = ParentConfigIndexer::for_node(model, node);
    const int r = model.variable(node).cardinality;

    for (size_t slot = 0; slot < parents.size(); ++slot) {
      if (signs[slot] == MonotoneSign::Unannotated) continue;
      const int rp = model.variable(parents[slot]).cardinality;
      // Enumerate the ceteris-paribus contexts by walking every full
      // configuration with this parent pinned at 0, then stepping it.
      for (int j = 0; j < indexer.count(); ++j) {
        std::vector<int> values = indexer.config_of(j);
        if (values[slot] != 0) continue;
        for (int v = 0; v + 1 < rp; ++v) {
          values[slot] = v;
          const int j_at_v = indexer.index_of(values);
          values[slot] = v + 1;
          const int j_at_v1 = indexer.index_of(values);
          const bool isotone = signs[slot] == MonotoneSign::Isotone;
          const int j_hi = isotone ? j_at_v1 : j_at_v;
          const int j_lo = isotone ? j_at_v : j_at_v1;
          for (int kc = 0; kc + 1 < r; ++kc) {
            nc.items.push_back({node, j_hi, j_lo, kc, nc.epsilon_node});
          }
        }
        values[slot] = 0;
      }
    }
    set.nodes.push_back(std::move(nc));
  }
  return set;
}

namespace {

void require_distribution(std::span<const double> row, const char* which) {
  double sum = 0.0;
  for (double p : row) sum += p;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw DomainError(std::string("violation_delta: ") + which +
                      " row does not sum to 1 (sum = " + std::to_string(sum) + ")");
  }
}

}  // namespace

double violation_delta(std::span<const double> hi_row, std::span<const double> lo_row,
                       int kc, double epsilon) {
  if (hi_row.size() != lo_row.size()) {
    throw DomainError("violation_delta: row length mismatch");
  }
  if (kc < 0 || kc + 1 >= static_cast<int>(hi_row.size())) {
    throw DomainError("violation_delta: cumulative index out of range");
  }
  require_distribution(hi_row, "dominating");
  require_distribution(lo_row, "dominated");
  double cdf_hi = 0.0, cdf_lo = 0.0;
  for (int k = 0; k <= kc; ++k) {
    cdf_hi += hi_row[static_cast<size_t>(k)];
    cdf_lo += lo_row[static_cast<size_t>(k)];
  }
  return cdf_hi - cdf_lo + epsilon;
}

bool fsd_dominates(std::span<const double> p1, std::span<const double> p2,
                   double epsilon) {
  if (p1.size() != p2.size()) throw DomainError("fsd_dominates: length mismatch");
  if (p1.empty()) throw DomainError("fsd_dominates: empty distributions");
  double f1 = 0.0, f2 = 0.0;
  for (size_t y = 0; y + 1 < p1.size(); ++y) {
    f1 += p1[y];
    f2 += p2[y];
    if (f1 + epsilon > f2) return false;
  }
  return true;
}

FeasibilityReport check_feasibility(const CptSet& cpts, const ConstraintSet& constraints,
                                    double tolerance) {
  FeasibilityReport report;
  for (const NodeConstraints& nc : constraints.nodes) {
    const Cpt& cpt = cpts[static_cast<size_t>(nc.node)];
    for (const DominanceConstraint& c : nc.items) {
      const double delta =
          violation_delta(cpt.rows[static_cast<size_t>(c.j_hi)],
                          cpt.rows[static_cast<size_t>(c.j_lo)], c.kc, c.epsilon);
      if (delta > tolerance) {
        report.violations.push_back({c.node, c.j_hi, c.j_lo, c.kc, delta});
      }
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.delta > b.delta; });
  report.feasible = report.violations.empty();
  return report;
}

}  // namespace monobn
