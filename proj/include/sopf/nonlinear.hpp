#ifndef SOPF_NONLINEAR_HPP
#define SOPF_NONLINEAR_HPP

#include <vector>

#include "sopf/problems.hpp"

namespace sopf {

struct NewtonConfig {
  int max_iters = 10;
  double abs_tol = 1e-12;  // on ||step|| / (1 + ||alpha||)
  double damping = 1.0;
};

struct NewtonIteration {
  int iter;
  double residual_norm;
  double step_norm;
};

struct NewtonResult {
  Solution solution;
  std::vector<NewtonIteration> trace;

  void write_trace_csv(const std::string& path) const;
};

/// Gauss-Newton over the output weights: each step re-linearizes the pointwise
/// nonlinearity about u_k on the interior points and solves the resulting
/// weighted min-norm least-squares system. Starts from alpha = 0.
NewtonResult newton_solve(const PdeProblem& problem, const std::vector<FeatureNetwork>& nets,
                          const CollocationSet& colloc, const NewtonConfig& config = {},
                          DerivMethod method = DerivMethod::analytic);

}  // namespace sopf

#endif
