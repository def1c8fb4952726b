#pragma once

#include <span>
#include <string>
#include <vector>

namespace monobn {

// Discrete variable; states are 0..cardinality-1 in ascending ordinal order.
struct Variable {
  std::string name;
  int cardinality = 2;
};

enum class MonotoneSign { Isotone, Antitone, Unannotated };

struct Edge {
  std::string parent;
  std::string child;
  MonotoneSign sign = MonotoneSign::Unannotated;
};

// DAG over discrete variables with signed monotonicity annotations on edges.
// Immutable by convention once built; every accessor is const.
struct QualitativeModel {
  std::string name;
  std::vector<Variable> variables;
  std::vector<Edge> edges;
  std::string class_variable;

  int var_index(const std::string& var) const;  // -1 when absent
  const Variable& variable(int index) const;
  int class_index() const;

  // Parents in edge-declaration order. The order is load-bearing: it fixes
  // the digit order of parent-configuration indices.
  std::vector<int> parents_of(int var) const;
  std::vector<MonotoneSign> parent_signs_of(int var) const;
  std::vector<int> children_of(int var) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Diagnostics for cycles, undeclared endpoints, duplicate edges and names,
// cardinality < 2, missing class variable. Never throws.
ValidationReport validate_model(const QualitativeModel& model);

// Kahn's algorithm; throws DomainError when the edge set has a cycle.
std::vector<int> topological_order(const QualitativeModel& model);

// Mixed-radix bijection between parent-configuration indices and parent
// value vectors. The last parent varies fastest.
class ParentConfigIndexer {
 public:
  ParentConfigIndexer() = default;
  explicit ParentConfigIndexer(std::vector<int> cardinalities);
  static ParentConfigIndexer for_node(const QualitativeModel& model, int var);

  int count() const { return count_; }  // q; 1 when there are no parents
  int arity() const { return static_cast<int>(cards_.size()); }
  int cardinality_at(int slot) const { return cards_[static_cast<size_t>(slot)]; }
  int stride_at(int slot) const { return strides_[static_cast<size_t>(slot)]; }

  int index_of(std::span<const int> values) const;
  std::vector<int> config_of(int index) const;

 private:
  std::vector<int> cards_;
  std::vector<int> strides_;
  int count_ = 1;
};

// Conditional probability table for one node: q rows of r probabilities,
// rows listed in parent-configuration-index order.
struct Cpt {
  std::string node;
  int cardinality = 0;
  std::vector<std::vector<double>> rows;
};

// One Cpt per model variable, aligned with QualitativeModel::variables.
using CptSet = std::vector<Cpt>;

}  // namespace monobn
