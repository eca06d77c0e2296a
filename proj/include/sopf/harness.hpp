#ifndef SOPF_HARNESS_HPP
#define SOPF_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sopf/optimizer.hpp"

namespace sopf {

struct ExperimentConfig {
  std::string problem_id;
  std::map<std::string, double> problem_params;

  std::string activation = "sine";
  std::string derivative_method = "analytic";
  std::map<std::string, double> hyperparams;

  HyperparamSpace space;
  std::vector<std::string> algorithms = {"msc_pso"};
  std::vector<std::string> activations;  // optimize/sweep grid; defaults to {activation}
  int swarm_size = 20;
  int t_max = 50;

  std::vector<double> sweep_omegas;
  std::vector<double> sweep_kappas;

  std::uint64_t outer_seed = 1;
  std::uint64_t inner_seed = 1;
  std::uint64_t eval_seed = 1234;

  std::string out_dir = "out";

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_string(const std::string& text);
  std::string to_json_string() const;

  PdeProblem build_problem(double kappa_override = -1) const;
  InnerSettings inner_settings() const;
};

struct RunReport {
  std::map<std::string, double> fvals;           // per field
  double residual_norm = 0;
  double wall_seconds = 0;
  std::map<std::string, double> hyperparams_used;
  std::uint64_t outer_seed = 0, inner_seed = 0, eval_seed = 0;
  std::vector<std::string> artifacts;

  void write_json(const std::string& path) const;
};

/// One inner solve with explicit hyperparameters; writes report JSON plus a
/// solution-on-grid CSV (coordinates, predicted, analytic, absolute error).
RunReport run_solve(const ExperimentConfig& config);

/// Outer optimization over inner_fitness; one convergence CSV per requested
/// (activation, algorithm) pair.
RunReport run_optimize(const ExperimentConfig& config);

/// Activation/omega grid on the 1D Poisson sweep problem (N = 100 neurons).
RunReport run_sweep(const ExperimentConfig& config);

/// Analytic-vs-fd comparison on one preset: fval and timing per method.
RunReport run_derivative_bench(const ExperimentConfig& config);

}  // namespace sopf

#endif
