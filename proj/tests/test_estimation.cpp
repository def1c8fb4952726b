#include <doctest.h>

#include <cmath>

#include "monobn/constraints.hpp"
#include "monobn/errors.hpp"
#include "monobn/estimation.hpp"
#include "monobn/model.hpp"
#include "monobn/rng.hpp"
#include "oracles.hpp"

using namespace monobn;

namespace {

QualitativeModel parent_child(int parent_card, MonotoneSign sign, int child_card) {
  QualitativeModel m;
  m.variables = {{"x", parent_card}, {"y", child_card}};
  m.edges = {{"x", "y", sign}};
  m.class_variable = "y";
  return m;
}

DiscreteDataset dataset_for(const QualitativeModel& m, std::vector<std::vector<int>> rows) {
  DiscreteDataset d;
  for (const Variable& v : m.variables) d.schema.push_back({v.name, v.cardinality});
  d.class_col = m.class_index();
  d.rows = std::move(rows);
  return d;
}

NodeTable random_logits(Rng& rng, int q, int r, double scale = 2.0) {
  NodeTable mu(q, r);
  for (double& x : mu.v) x = (rng.uniform01() * 2.0 - 1.0) * scale;
  return mu;
}

NodeTable random_counts(Rng& rng, int q, int r, double alpha = 1.0) {
  NodeTable n(q, r, alpha);
  for (double& x : n.v) x += static_cast<double>(rng.below(16));
  return n;
}

}  // namespace

TEST_CASE("count_stats: empty dataset leaves only the prior") {
  const auto m = parent_child(2, MonotoneSign::Isotone, 2);
  const auto d = dataset_for(m, {});
  const SufficientStats stats = count_stats(d, m, 1.0);
  for (const NodeTable& node : stats.nodes) {
    for (double v : node.v) CHECK(v == doctest::Approx(1.0));
  }
}

TEST_CASE("count_stats: parentless binary node") {
  QualitativeModel m;
  m.variables = {{"y", 2}};
  m.class_variable = "y";
  const auto d = dataset_for(m, {{0}, {0}, {1}});
  const SufficientStats stats = count_stats(d, m, 1.0);
  CHECK(stats.nodes[0].at(0, 0) == doctest::Approx(3.0));
  CHECK(stats.nodes[0].at(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("count_stats: child rows keyed by parent configuration") {
  const auto m = parent_child(2, MonotoneSign::Isotone, 2);
  const auto d = dataset_for(m, {{0, 1}, {1, 1}});
  const SufficientStats stats = count_stats(d, m, 0.5);
  const NodeTable& child = stats.nodes[1];
  CHECK(child.at(0, 0) == doctest::Approx(0.5));
  CHECK(child.at(0, 1) == doctest::Approx(1.5));
  CHECK(child.at(1, 0) == doctest::Approx(0.5));
  CHECK(child.at(1, 1) == doctest::Approx(1.5));
}

TEST_CASE("count_stats: totals reconcile with the dataset size") {
  const auto m = parent_child(3, MonotoneSign::Isotone, 3);
  Rng rng(3);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 40; ++i) {
    rows.push_back({static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3))});
  }
  const auto d = dataset_for(m, rows);
  const SufficientStats stats = count_stats(d, m, 0.5);
  for (const NodeTable& node : stats.nodes) {
    double total = 0.0;
    for (double v : node.v) total += v;
    CHECK(total - 0.5 * node.q * node.r == doctest::Approx(40.0));
  }
}

TEST_CASE("count_stats rejects out-of-range values with location") {
  const auto m = parent_child(2, MonotoneSign::Isotone, 2);
  const auto d = dataset_for(m, {{0, 3}});
  CHECK_THROWS_WITH_AS(count_stats(d, m, 1.0),
                       doctest::Contains("row 1"), DataError);
}

TEST_CASE("mle fixtures") {
  NodeTable n1(1, 2);
  n1.at(0, 0) = 1;
  n1.at(0, 1) = 1;
  CHECK(mle_rows(n1)[0] == std::vector<double>{0.5, 0.5});

  NodeTable n2(1, 2);
  n2.at(0, 0) = 3;
  n2.at(0, 1) = 1;
  CHECK(mle_rows(n2)[0] == std::vector<double>{0.75, 0.25});

  NodeTable n3(1, 3);
  n3.at(0, 0) = 1;
  n3.at(0, 1) = 2;
  n3.at(0, 2) = 1;
  CHECK(mle_rows(n3)[0] == std::vector<double>{0.25, 0.5, 0.25});

  NodeTable zero(1, 2, 0.0);
  CHECK_THROWS_AS(mle_rows(zero), DomainError);
}

TEST_CASE("softmax fixtures and round trip") {
  NodeTable mu(1, 2);
  CHECK(softmax_theta(mu).at(0, 0) == doctest::Approx(0.5));

  mu.at(0, 0) = std::log(2.0);
  const NodeTable theta = softmax_theta(mu);
  CHECK(theta.at(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(theta.at(0, 1) == doctest::Approx(1.0 / 3.0));

  NodeTable shifted(1, 3, 7.25);
  const NodeTable uniform = softmax_theta(shifted);
  for (int k = 0; k < 3; ++k) CHECK(uniform.at(0, k) == doctest::Approx(1.0 / 3.0));

  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = static_cast<int>(rng.below(4)) + 1;
    const int r = static_cast<int>(rng.below(3)) + 2;
    NodeTable t(q, r);
    for (int j = 0; j < q; ++j) {
      double sum = 0.0;
      for (int k = 0; k < r; ++k) {
        t.at(j, k) = rng.uniform01() + 1e-3;
        sum += t.at(j, k);
      }
      for (int k = 0; k < r; ++k) t.at(j, k) /= sum;
    }
    const NodeTable back = softmax_theta(logits_of_theta(t));
    for (size_t i = 0; i < t.v.size(); ++i) {
      CHECK(back.v[i] == doctest::Approx(t.v[i]).epsilon(1e-12));
    }
  }

  NodeTable nonpos(1, 2, 0.0);
  CHECK_THROWS_AS(logits_of_theta(nonpos), DomainError);
}

TEST_CASE("log likelihood value at the uniform point") {
  NodeTable mu(1, 2);
  NodeTable n(1, 2, 2.0);
  CHECK(log_likelihood(mu, n) == doctest::Approx(4.0 * std::log(0.5)));
}

TEST_CASE("gradient vanishes at the MLE logits") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int q = static_cast<int>(rng.below(3)) + 1;
    const int r = static_cast<int>(rng.below(3)) + 2;
    const NodeTable n = random_counts(rng, q, r);
    const auto rows = mle_rows(n);
    NodeTable theta(q, r);
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < r; ++k) theta.at(j, k) = rows[static_cast<size_t>(j)][static_cast<size_t>(k)];
    }
    const NodeTable grad = gradient_loglik(logits_of_theta(theta), n);
    for (double g : grad.v) CHECK(std::abs(g) < 1e-9);
  }
}

TEST_CASE("loglik gradient matches central finite differences") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int q = static_cast<int>(rng.below(3)) + 1;
    const int r = static_cast<int>(rng.below(3)) + 2;
    NodeTable mu = random_logits(rng, q, r);
    const NodeTable n = random_counts(rng, q, r);
    const NodeTable grad = gradient_loglik(mu, n);
    auto f = [&](const NodeTable& m) { return log_likelihood(m, n); };
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < r; ++k) {
        const double fd = oracles::central_difference(f, mu, j, k);
        const double an = grad.at(j, k);
        CHECK(std::abs(an - fd) <=
              std::max(1e-5 * std::max(std::abs(an), std::abs(fd)), 1e-8));
      }
    }
  }
}

TEST_CASE("penalty terms: uniform logits sit exactly on the boundary") {
  const auto m = parent_child(3, MonotoneSign::Isotone, 3);
  const ConstraintSet set = generate_constraints(m, 0.0);
  const NodeConstraints* nc = set.find(m.var_index("y"));
  REQUIRE(nc != nullptr);
  NodeTable mu(3, 3);
  for (const PenaltyTerm& term : penalty_terms(mu, *nc)) {
    CHECK(term.delta == doctest::Approx(0.0));
    CHECK(term.value == 0.0);
  }
  const Objective obj = penalized_objective(mu, NodeTable(3, 3, 1.0), nc, 100.0);
  CHECK(obj.penalty == doctest::Approx(0.0));
}

TEST_CASE("penalty value for the 0.7 vs 0.5 fixture") {
  const auto m = parent_child(2, MonotoneSign::Isotone, 2);
  const ConstraintSet set = generate_constraints(m, 0.0);
  const NodeConstraints* nc = set.find(m.var_index("y"));
  NodeTable theta(2, 2);
  theta.at(0, 0) = 0.5;  // dominated configuration
  theta.at(0, 1) = 0.5;
  theta.at(1, 0) = 0.7;  // dominating configuration, violating
  theta.at(1, 1) = 0.3;
  const NodeTable mu = logits_of_theta(theta);
  const auto terms = penalty_terms(mu, *nc);
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].delta == doctest::Approx(0.2));
  CHECK(terms[0].value == doctest::Approx(0.04));

  const NodeTable n(2, 2, 1.0);
  const Objective with_weight = penalized_objective(mu, n, nc, 100.0);
  CHECK(with_weight.value == doctest::Approx(log_likelihood(mu, n) - 4.0));
}

TEST_CASE("penalized objective degenerates to the likelihood") {
  const auto m = parent_child(3, MonotoneSign::Antitone, 2);
  const ConstraintSet set = generate_constraints(m, 0.1);
  const NodeConstraints* nc = set.find(m.var_index("y"));
  Rng rng(41);
  const NodeTable mu = random_logits(rng, 3, 2);
  const NodeTable n = random_counts(rng, 3, 2);
  CHECK(penalized_objective(mu, n, nc, 0.0).value ==
        doctest::Approx(log_likelihood(mu, n)));

  // A steeply antitone table is feasible at margin 0.1, so the indicator is
  // off: the child distribution shifts down as the parent value rises.
  NodeTable theta(3, 2);
  theta.at(0, 0) = 0.1;
  theta.at(0, 1) = 0.9;
  theta.at(1, 0) = 0.5;
  theta.at(1, 1) = 0.5;
  theta.at(2, 0) = 0.9;
  theta.at(2, 1) = 0.1;
  const NodeTable feasible_mu = logits_of_theta(theta);
  CHECK(penalized_objective(feasible_mu, n, nc, 250.0).value ==
        doctest::Approx(log_likelihood(feasible_mu, n)));
}

TEST_CASE("penalized gradient matches central finite differences") {
  Rng rng(57);
  int done = 0;
  while (done < 60) {
    const int parent_card = static_cast<int>(rng.below(3)) + 2;
    const int child_card = static_cast<int>(rng.below(3)) + 2;
    const auto sign = rng.below(2) == 0 ? MonotoneSign::Isotone : MonotoneSign::Antitone;
    const auto m = parent_child(parent_card, sign, child_card);
    const double eps = rng.below(3) == 0 ? 0.0 : rng.uniform01() * 0.2;
    const ConstraintSet set = generate_constraints(m, eps);
    const NodeConstraints* nc = set.find(m.var_index("y"));
    REQUIRE(nc != nullptr);

    NodeTable mu = random_logits(rng, parent_card, child_card);
    const NodeTable n = random_counts(rng, parent_card, child_card);
    const double w = std::vector<double>{0.0, 1.0, 100.0}[rng.below(3)];

    // The squared-hinge penalty is C1 but not C2 at delta = 0; keep samples
    // away from the hinge so the finite difference stays two-sided smooth.
    bool near_hinge = false;
    for (const PenaltyTerm& t : penalty_terms(mu, *nc)) {
      near_hinge |= std::abs(t.delta) < 1e-3;
    }
    if (near_hinge) continue;
    ++done;

    const Objective obj = penalized_objective(mu, n, nc, w);
    auto f = [&](const NodeTable& point) {
      return penalized_objective(point, n, nc, w).value;
    };
    for (int j = 0; j < mu.q; ++j) {
      for (int k = 0; k < mu.r; ++k) {
        const double fd = oracles::central_difference(f, mu, j, k);
        const double an = obj.grad.at(j, k);
        CHECK(std::abs(an - fd) <=
              std::max(1e-5 * std::max(std::abs(an), std::abs(fd)), 1e-8));
      }
    }
  }
}

TEST_CASE("shift invariance: adding a constant to one row changes nothing") {
  const auto m = parent_child(3, MonotoneSign::Isotone, 3);
  const ConstraintSet set = generate_constraints(m, 0.1);
  const NodeConstraints* nc = set.find(m.var_index("y"));
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    NodeTable mu = random_logits(rng, 3, 3);
    const NodeTable n = random_counts(rng, 3, 3);
    const Objective before = penalized_objective(mu, n, nc, 10.0);
    const NodeTable theta_before = softmax_theta(mu);

    const int row = static_cast<int>(rng.below(3));
    const double c = (rng.uniform01() * 2.0 - 1.0) * 5.0;
    for (int k = 0; k < 3; ++k) mu.at(row, k) += c;

    const Objective after = penalized_objective(mu, n, nc, 10.0);
    const NodeTable theta_after = softmax_theta(mu);
    CHECK(after.value == doctest::Approx(before.value).epsilon(1e-9));
    CHECK(after.loglik == doctest::Approx(before.loglik).epsilon(1e-9));
    CHECK(after.penalty == doctest::Approx(before.penalty).epsilon(1e-9));
    for (size_t i = 0; i < theta_before.v.size(); ++i) {
      CHECK(theta_after.v[i] == doctest::Approx(theta_before.v[i]).epsilon(1e-9));
    }
  }
}
