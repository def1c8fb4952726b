#include <doctest.h>

#include "monobn/errors.hpp"
#include "monobn/model.hpp"
#include "monobn/rng.hpp"

using namespace monobn;

namespace {

QualitativeModel two_node_model() {
  QualitativeModel m;
  m.name = "t";
  m.variables = {{"a", 2}, {"c", 2}};
  m.edges = {{"a", "c", MonotoneSign::Isotone}};
  m.class_variable = "c";
  return m;
}

}  // namespace

TEST_CASE("indexer maps the zero config to index 0") {
  ParentConfigIndexer idx({3, 3});
  CHECK(idx.count() == 9);
  const int values[] = {0, 0};
  CHECK(idx.index_of(values) == 0);
}

TEST_CASE("indexer: last parent varies fastest") {
  ParentConfigIndexer idx({3, 3});
  const int values[] = {1, 2};
  CHECK(idx.index_of(values) == 5);
  CHECK(idx.config_of(5) == std::vector<int>{1, 2});
}

TEST_CASE("indexer round-trips on random shapes") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int arity = static_cast<int>(rng.below(5)) + 1;
    std::vector<int> cards;
    for (int i = 0; i < arity; ++i) cards.push_back(static_cast<int>(rng.below(4)) + 2);
    ParentConfigIndexer idx(cards);
    for (int j = 0; j < idx.count(); ++j) {
      CHECK(idx.index_of(idx.config_of(j)) == j);
    }
    std::vector<int> values;
    for (int c : cards) values.push_back(static_cast<int>(rng.below(static_cast<uint64_t>(c))));
    CHECK(idx.config_of(idx.index_of(values)) == values);
  }
}

TEST_CASE("indexer with no parents has a single config") {
  ParentConfigIndexer idx(std::vector<int>{});
  CHECK(idx.count() == 1);
  CHECK(idx.index_of(std::span<const int>{}) == 0);
  CHECK(idx.config_of(0).empty());
}

TEST_CASE("indexer rejects out-of-range input") {
  ParentConfigIndexer idx({3, 3});
  const int bad[] = {3, 0};
  CHECK_THROWS_AS(idx.index_of(bad), DomainError);
  CHECK_THROWS_AS(idx.config_of(9), DomainError);
  CHECK_THROWS_AS(idx.config_of(-1), DomainError);
}

TEST_CASE("validate: empty edge list over valid variables is ok") {
  QualitativeModel m;
  m.variables = {{"a", 2}, {"b", 3}};
  m.class_variable = "a";
  CHECK(validate_model(m).ok());
}

TEST_CASE("validate: 2-cycle is reported") {
  QualitativeModel m;
  m.variables = {{"a", 2}, {"b", 2}};
  m.class_variable = "a";
  m.edges = {{"a", "b", MonotoneSign::Isotone}, {"b", "a", MonotoneSign::Isotone}};
  const ValidationReport report = validate_model(m);
  CHECK_FALSE(report.ok());
  bool saw_cycle = false;
  for (const auto& v : report.violations) saw_cycle |= v.find("cycle") != std::string::npos;
  CHECK(saw_cycle);
}

TEST_CASE("validate: undeclared endpoint, low cardinality, duplicate edge") {
  QualitativeModel m;
  m.variables = {{"a", 2}, {"b", 1}};
  m.class_variable = "a";
  m.edges = {{"a", "z", MonotoneSign::Unannotated},
             {"a", "b", MonotoneSign::Isotone},
             {"a", "b", MonotoneSign::Isotone}};
  const ValidationReport report = validate_model(m);
  CHECK(report.violations.size() >= 3);
}

TEST_CASE("topological order exists for accepted models") {
  const QualitativeModel m = two_node_model();
  REQUIRE(validate_model(m).ok());
  const std::vector<int> order = topological_order(m);
  CHECK(order.size() == 2);
  CHECK(order[0] == m.var_index("a"));
}

TEST_CASE("topological order throws on a cycle") {
  QualitativeModel m;
  m.variables = {{"a", 2}, {"b", 2}};
  m.class_variable = "a";
  m.edges = {{"a", "b", MonotoneSign::Isotone}, {"b", "a", MonotoneSign::Isotone}};
  CHECK_THROWS_AS(topological_order(m), DomainError);
}

TEST_CASE("parents are listed in edge-declaration order") {
  QualitativeModel m;
  m.variables = {{"x", 2}, {"y", 3}, {"z", 2}};
  m.class_variable = "z";
  m.edges = {{"y", "z", MonotoneSign::Isotone}, {"x", "z", MonotoneSign::Antitone}};
  const auto parents = m.parents_of(m.var_index("z"));
  REQUIRE(parents.size() == 2);
  CHECK(parents[0] == m.var_index("y"));
  CHECK(parents[1] == m.var_index("x"));
  const auto signs = m.parent_signs_of(m.var_index("z"));
  CHECK(signs[0] == MonotoneSign::Isotone);
  CHECK(signs[1] == MonotoneSign::Antitone);
}
