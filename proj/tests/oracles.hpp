// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "monobn/classify.hpp"
#include "monobn/estimation.hpp"
#include "monobn/model.hpp"
#include "monobn/rng.hpp"

namespace oracles {

// Central finite difference of a scalar function of one table entry.
template <typename F>
double central_difference(F&& f, monobn::NodeTable& mu, int j, int k, double h = 1e-5) {
  const double saved = mu.at(j, k);
  mu.at(j, k) = saved + h;
  const double up = f(mu);
  mu.at(j, k) = saved - h;
  const double down = f(mu);
  mu.at(j, k) = saved;
  return (up - down) / (2.0 * h);
}

// Constrained MLE for a binary child with one isotone parent over q ordered
// configurations, by exhaustive search on a grid of step `step` per free
// parameter. theta[j][0] must decrease by at least eps per parent step. The
// suffix-max sweep considers exactly the same grid assignments a nested loop
// would.
inline std::vector<std::vector<double>> grid_constrained_mle(
    const std::vector<std::vector<double>>& counts, double eps, double step = 1e-3) {
  const int q = static_cast<int>(counts.size());
  const int g = static_cast<int>(std::lround(1.0 / step)) - 1;  // interior points

  auto loglik = [&](int j, int i) {
    const double t = static_cast<double>(i + 1) * step;
    return counts[static_cast<size_t>(j)][0] * std::log(t) +
           counts[static_cast<size_t>(j)][1] * std::log(1.0 - t);
  };

  // best[i]: best value over rows 0..j with row j pinned at grid point i.
  std::vector<double> best(static_cast<size_t>(g));
  std::vector<std::vector<int>> arg_prev(static_cast<size_t>(q),
                                         std::vector<int>(static_cast<size_t>(g), -1));
  for (int i = 0; i < g; ++i) best[static_cast<size_t>(i)] = loglik(0, i);

  for (int j = 1; j < q; ++j) {
    // suffix_max[i]: best over grid points >= i in the previous row.
    std::vector<double> suffix(static_cast<size_t>(g));
    std::vector<int> suffix_arg(static_cast<size_t>(g));
    suffix[static_cast<size_t>(g - 1)] = best[static_cast<size_t>(g - 1)];
    suffix_arg[static_cast<size_t>(g - 1)] = g - 1;
    for (int i = g - 2; i >= 0; --i) {
      if (best[static_cast<size_t>(i)] >= suffix[static_cast<size_t>(i + 1)]) {
        suffix[static_cast<size_t>(i)] = best[static_cast<size_t>(i)];
        suffix_arg[static_cast<size_t>(i)] = i;
      } else {
        suffix[static_cast<size_t>(i)] = suffix[static_cast<size_t>(i + 1)];
        suffix_arg[static_cast<size_t>(i)] = suffix_arg[static_cast<size_t>(i + 1)];
      }
    }
    std::vector<double> next(static_cast<size_t>(g),
                             -std::numeric_limits<double>::infinity());
    for (int i = 0; i < g; ++i) {
      // Previous row must sit at least eps above this grid point.
      const double needed = static_cast<double>(i + 1) * step + eps - 1e-12;
      const int lo = std::max(0, static_cast<int>(std::ceil(needed / step)) - 1);
      if (lo >= g) continue;
      next[static_cast<size_t>(i)] = loglik(j, i) + suffix[static_cast<size_t>(lo)];
      arg_prev[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          suffix_arg[static_cast<size_t>(lo)];
    }
    best.swap(next);
  }

  int arg = 0;
  for (int i = 1; i < g; ++i) {
    if (best[static_cast<size_t>(i)] > best[static_cast<size_t>(arg)]) arg = i;
  }
  std::vector<int> pick(static_cast<size_t>(q));
  pick[static_cast<size_t>(q - 1)] = arg;
  for (int j = q - 1; j > 0; --j) {
    pick[static_cast<size_t>(j - 1)] =
        arg_prev[static_cast<size_t>(j)][static_cast<size_t>(pick[static_cast<size_t>(j)])];
  }
  std::vector<std::vector<double>> theta(static_cast<size_t>(q));
  for (int j = 0; j < q; ++j) {
    const double t = static_cast<double>(pick[static_cast<size_t>(j)] + 1) * step;
    theta[static_cast<size_t>(j)] = {t, 1.0 - t};
  }
  return theta;
}

// Posterior over the class variable by enumerating the full joint
// distribution; instance values are in model-variable order, the class slot
// is ignored.
inline std::vector<double> enumerate_posterior(const monobn::QualitativeModel& model,
                                               const monobn::CptSet& cpts,
                                               const std::vector<int>& instance) {
  const int n = static_cast<int>(model.variables.size());
  const int class_var = model.class_index();
  const int r = model.variable(class_var).cardinality;

  std::vector<monobn::ParentConfigIndexer> indexers;
  std::vector<std::vector<int>> parents;
  for (int v = 0; v < n; ++v) {
    indexers.push_back(monobn::ParentConfigIndexer::for_node(model, v));
    parents.push_back(model.parents_of(v));
  }

  std::vector<double> mass(static_cast<size_t>(r), 0.0);
  std::vector<int> assignment(static_cast<size_t>(n), 0);
  while (true) {
    double p = 1.0;
    for (int v = 0; v < n; ++v) {
      std::vector<int> pv;
      for (int pa : parents[static_cast<size_t>(v)]) {
        pv.push_back(assignment[static_cast<size_t>(pa)]);
      }
      const int j = indexers[static_cast<size_t>(v)].index_of(pv);
      p *= cpts[static_cast<size_t>(v)].rows[static_cast<size_t>(j)]
                                            [static_cast<size_t>(assignment[static_cast<size_t>(v)])];
    }
    bool matches = true;
    for (int v = 0; v < n; ++v) {
      if (v != class_var && assignment[static_cast<size_t>(v)] != instance[static_cast<size_t>(v)]) {
        matches = false;
        break;
      }
    }
    if (matches) mass[static_cast<size_t>(assignment[static_cast<size_t>(class_var)])] += p;

    int v = n - 1;
    while (v >= 0) {
      if (++assignment[static_cast<size_t>(v)] < model.variable(v).cardinality) break;
      assignment[static_cast<size_t>(v)] = 0;
      --v;
    }
    if (v < 0) break;
  }
  double z = 0.0;
  for (double m : mass) z += m;
  for (double& m : mass) m /= z;
  return mass;
}

// Exact two-sided binomial test on the disagreement counts: p-value of
// Bin(b + c, 1/2) at max(b, c) or beyond, doubled and capped at 1.
inline double binomial_two_sided_p(int b, int c) {
  const int n = b + c;
  if (n == 0) return 1.0;
  const int hi = b > c ? b : c;
  // log C(n, k) via lgamma.
  double tail = 0.0;
  for (int k = hi; k <= n; ++k) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + 1.0) - n * std::log(2.0);
    tail += std::exp(log_term);
  }
  const double p = 2.0 * tail;
  return p > 1.0 ? 1.0 : p;
}

// Forward sampler for synthetic-network experiments.
inline monobn::DiscreteDataset sample_from_network(const monobn::QualitativeModel& model,
                                                   const monobn::CptSet& cpts, size_t rows,
                                                   uint64_t seed) {
  monobn::DiscreteDataset data;
  for (const monobn::Variable& v : model.variables) {
    data.schema.push_back({v.name, v.cardinality});
  }
  data.class_col = model.class_index();

  const std::vector<int> order = monobn::topological_order(model);
  std::vector<monobn::ParentConfigIndexer> indexers;
  std::vector<std::vector<int>> parents;
  for (int v = 0; v < static_cast<int>(model.variables.size()); ++v) {
    indexers.push_back(monobn::ParentConfigIndexer::for_node(model, v));
    parents.push_back(model.parents_of(v));
  }

  monobn::Rng rng(seed);
  for (size_t i = 0; i < rows; ++i) {
    std::vector<int> row(model.variables.size(), 0);
    for (int v : order) {
      std::vector<int> pv;
      for (int pa : parents[static_cast<size_t>(v)]) {
        pv.push_back(row[static_cast<size_t>(pa)]);
      }
      const int j = indexers[static_cast<size_t>(v)].index_of(pv);
      const auto& dist = cpts[static_cast<size_t>(v)].rows[static_cast<size_t>(j)];
      double u = rng.uniform01();
      int k = 0;
      while (k + 1 < static_cast<int>(dist.size()) && u >= dist[static_cast<size_t>(k)]) {
        u -= dist[static_cast<size_t>(k)];
        ++k;
      }
      row[static_cast<size_t>(v)] = k;
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace oracles
