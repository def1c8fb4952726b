#pragma once

#include <functional>
#include <span>
#include <vector>

namespace monobn {

struct LbfgsOptions {
  int depth = 10;
  // Convergence when the max-abs gradient entry drops below this.
  double grad_tolerance = 1e-6;
  int max_iterations = 500;
};

enum class LbfgsStatus {
  Converged,        // gradient tolerance reached
  IterationCap,     // ran out of iterations
  LineSearchFailed, // no step yields sufficient decrease
  NonFinite,        // objective or gradient left the finite range
};

struct LbfgsResult {
  LbfgsStatus status = LbfgsStatus::Converged;
  int iterations = 0;
  double value = 0.0;
  double grad_inf_norm = 0.0;
};

// Objective: writes the gradient into the second argument, returns the value.
using ObjectiveFn = std::function<double(std::span<const double>, std::span<double>)>;

// Limited-memory BFGS minimizer: two-loop recursion with backtracking Armijo
// line search. x is updated in place to the best point found, including on
// failure statuses.
LbfgsResult lbfgs_minimize(std::vector<double>& x, const ObjectiveFn& f,
                           const LbfgsOptions& options = {});

}  // namespace monobn
