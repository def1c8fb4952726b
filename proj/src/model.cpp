#include "monobn/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "monobn/errors.hpp"

namespace monobn {

int QualitativeModel::var_index(const std::string& var) const {
  for (size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == var) return static_cast<int>(i);
  }
  return -1;
}

const Variable& QualitativeModel::variable(int index) const {
  if (index < 0 || index >= static_cast<int>(variables.size())) {
    throw DomainError("variable index out of range: " + std::to_string(index));
  }
  return variables[static_cast<size_t>(index)];
}

int QualitativeModel::class_index() const { return var_index(class_variable); }

std::vector<int> QualitativeModel::parents_of(int var) const {
  std::vector<int> out;
  const std::string& name = variable(var).name;
  for (const Edge& e : edges) {
    if (e.child == name) out.push_back(var_index(e.parent));
  }
  return out;
}

std::vector<MonotoneSign> QualitativeModel::parent_signs_of(int var) const {
  std::vector<MonotoneSign> out;
  const std::string& name = variable(var).name;
  for (const Edge& e : edges) {
    if (e.child == name) out.push_back(e.sign);
  }
  return out;
}

std::vector<int> QualitativeModel::children_of(int var) const {
  std::vector<int> out;
  const std::string& name = variable(var).name;
  for (const Edge& e : edges) {
    if (e.parent == name) out.push_back(var_index(e.child));
  }
  return out;
}

ValidationReport validate_model(const QualitativeModel& model) {
  ValidationReport report;
  std::unordered_set<std::string> names;
  for (const Variable& v : model.variables) {
    if (!names.insert(v.name).second) {
      report.violations.push_back("duplicate variable name: " + v.name);
    }
    if (v.cardinality < 2) {
      report.violations.push_back("variable " + v.name + " has cardinality " +
                                  std::to_string(v.cardinality) + " (< 2)");
    }
  }
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const Edge& e : model.edges) {
    if (!names.count(e.parent)) {
      report.violations.push_back("edge references undeclared variable: " + e.parent);
    }
    if (!names.count(e.child)) {
      report.violations.push_back("edge references undeclared variable: " + e.child);
    }
    if (!seen_edges.insert({e.parent, e.child}).second) {
      report.violations.push_back("duplicate edge: " + e.parent + " -> " + e.child);
    }
    if (e.parent == e.child) {
      report.violations.push_back("self-loop on " + e.parent);
    }
  }
  if (model.class_variable.empty()) {
    report.violations.push_back("no class variable declared");
  } else if (!names.count(model.class_variable)) {
    report.violations.push_back("class variable is undeclared: " + model.class_variable);
  }

  // Cycle check over the declared endpoints only.
  std::unordered_map<std::string, int> indegree;
  for (const auto& n : names) indegree[n] = 0;
  for (const Edge& e : model.edges) {
    if (names.count(e.parent) && names.count(e.child) && e.parent != e.child) {
      ++indegree[e.child];
    }
  }
  std::vector<std::string> frontier;
  for (const auto& [n, d] : indegree) {
    if (d == 0) frontier.push_back(n);
  }
  size_t removed = 0;
  while (!frontier.empty()) {
    std::string n = frontier.back();
    frontier.pop_back();
    ++removed;
    for (const Edge& e : model.edges) {
      if (e.parent == n && names.count(e.child) && e.parent != e.child) {
        if (--indegree[e.child] == 0) frontier.push_back(e.child);
      }
    }
  }
  if (removed < names.size()) {
    report.violations.push_back("edge set contains a directed cycle");
  }
  return report;
}

std::vector<int> topological_order(const QualitativeModel& model) {
  const int n = static_cast<int>(model.variables.size());
  std::vector<int> indegree(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const Edge& e : model.edges) {
    int p = model.var_index(e.parent);
    int c = model.var_index(e.child);
    if (p < 0 || c < 0) throw DomainError("edge references undeclared variable");
    adj[static_cast<size_t>(p)].push_back(c);
    ++indegree[static_cast<size_t>(c)];
  }
  std::vector<int> order;
  std::vector<int> frontier;
  for (int i = 0; i < n; ++i) {
    if (indegree[static_cast<size_t>(i)] == 0) frontier.push_back(i);
  }
  // Smallest index first keeps the order deterministic.
  std::sort(frontier.begin(), frontier.end(), std::greater<int>());
  while (!frontier.empty()) {
    int v = frontier.back();
    frontier.pop_back();
    order.push_back(v);
    for (int c : adj[static_cast<size_t>(v)]) {
      if (--indegree[static_cast<size_t>(c)] == 0) {
        frontier.push_back(c);
        std::sort(frontier.begin(), frontier.end(), std::greater<int>());
      }
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw DomainError("model has a directed cycle; no topological order exists");
  }
  return order;
}

ParentConfigIndexer::ParentConfigIndexer(std::vector<int> cardinalities)
    : cards_(std::move(cardinalities)) {
  strides_.assign(cards_.size(), 1);
  for (int i = static_cast<int>(cards_.size()) - 2; i >= 0; --i) {
    strides_[static_cast<size_t>(i)] =
        strides_[static_cast<size_t>(i) + 1] * cards_[static_cast<size_t>(i) + 1];
  }
  count_ = 1;
  for (int c : cards_) {
    if (c < 1) throw DomainError("parent cardinality must be positive");
    count_ *= c;
  }
}

ParentConfigIndexer ParentConfigIndexer::for_node(const QualitativeModel& model, int var) {
  std::vector<int> cards;
  for (int p : model.parents_of(var)) cards.push_back(model.variable(p).cardinality);
  return ParentConfigIndexer(std::move(cards));
}

int ParentConfigIndexer::index_of(std::span<const int> values) const {
  if (values.size() != cards_.size()) {
    throw DomainError("parent value vector has wrong arity");
  }
  int idx = 0;
  for (size_t i = 0; i < cards_.size(); ++i) {
    if (values[i] < 0 || values[i] >= cards_[i]) {
      throw DomainError("parent value out of range at slot " + std::to_string(i));
    }
    idx += values[i] * strides_[i];
  }
  return idx;
}

std::vector<int> ParentConfigIndexer::config_of(int index) const {
  if (index < 0 || index >= count_) {
    throw DomainError("parent configuration index out of range: " + std::to_string(index));
  }
  std::vector<int> values(cards_.size(), 0);
  for (size_t i = 0; i < cards_.size(); ++i) {
    values[i] = (index / strides_[i]) % cards_[i];
  }
  return values;
}

}  // namespace monobn
