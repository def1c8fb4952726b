#include "monobn/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace monobn {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

}  // namespace

LbfgsResult lbfgs_minimize(std::vector<double>& x, const ObjectiveFn& f,
                           const LbfgsOptions& options) {
  const size_t n = x.size();
  std::vector<double> grad(n), new_x(n), new_grad(n), dir(n), alpha_buf;
  std::deque<Pair> history;

  double value = f(x, grad);
  LbfgsResult result;
  result.value = value;
  result.grad_inf_norm = inf_norm(grad);
  if (!std::isfinite(value) || !all_finite(grad)) {
    result.status = LbfgsStatus::NonFinite;
    return result;
  }
  if (result.grad_inf_norm <= options.grad_tolerance) {
    result.status = LbfgsStatus::Converged;
    return result;
  }

  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 50;

  for (int it = 1; it <= options.max_iterations; ++it) {
    // Two-loop recursion.
    dir.assign(grad.begin(), grad.end());
    alpha_buf.assign(history.size(), 0.0);
    for (size_t i = history.size(); i-- > 0;) {
      const Pair& p = history[i];
      alpha_buf[i] = p.rho * dot(p.s, dir);
      for (size_t k = 0; k < n; ++k) dir[k] -= alpha_buf[i] * p.y[k];
    }
    if (!history.empty()) {
      const Pair& last = history.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& d : dir) d *= gamma;
    }
    for (size_t i = 0; i < history.size(); ++i) {
      const Pair& p = history[i];
      const double beta = p.rho * dot(p.y, dir);
      for (size_t k = 0; k < n; ++k) dir[k] += (alpha_buf[i] - beta) * p.s[k];
    }
    for (double& d : dir) d = -d;

    double slope = dot(grad, dir);
    if (!(slope < 0.0)) {
      // Not a descent direction; fall back to steepest descent.
      history.clear();
      for (size_t k = 0; k < n; ++k) dir[k] = -grad[k];
      slope = dot(grad, dir);
    }

    // Backtracking Armijo search. The first iteration starts with a step
    // scaled to unit gradient size.
    double step = history.empty() ? std::min(1.0, 1.0 / std::max(1.0, inf_norm(grad))) : 1.0;
    bool accepted = false;
    double new_value = value;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (size_t k = 0; k < n; ++k) new_x[k] = x[k] + step * dir[k];
      new_value = f(new_x, new_grad);
      if (std::isfinite(new_value) && all_finite(new_grad) &&
          new_value <= value + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    result.iterations = it;
    if (!accepted) {
      result.status = LbfgsStatus::LineSearchFailed;
      result.value = value;
      result.grad_inf_norm = inf_norm(grad);
      return result;
    }

    Pair p;
    p.s.resize(n);
    p.y.resize(n);
    for (size_t k = 0; k < n; ++k) {
      p.s[k] = new_x[k] - x[k];
      p.y[k] = new_grad[k] - grad[k];
    }
    const double sy = dot(p.s, p.y);
    const double ss = std::sqrt(dot(p.s, p.s));
    const double yy = std::sqrt(dot(p.y, p.y));
    if (sy > 1e-12 * ss * yy && sy > 0.0) {
      p.rho = 1.0 / sy;
      history.push_back(std::move(p));
      if (static_cast<int>(history.size()) > options.depth) history.pop_front();
    }

    x.swap(new_x);
    grad.swap(new_grad);
    value = new_value;
    result.value = value;
    result.grad_inf_norm = inf_norm(grad);
    if (result.grad_inf_norm <= options.grad_tolerance) {
      result.status = LbfgsStatus::Converged;
      return result;
    }
  }
  result.status = LbfgsStatus::IterationCap;
  return result;
}

}  // namespace monobn
