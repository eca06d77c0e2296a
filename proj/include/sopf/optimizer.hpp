#ifndef SOPF_OPTIMIZER_HPP
#define SOPF_OPTIMIZER_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sopf/nonlinear.hpp"
#include "sopf/problems.hpp"

namespace sopf {

struct SpaceDim {
  std::string name;
  double lower, upper;
  bool integer = false;

  double v_max() const { return 0.2 * (upper - lower); }
  double sigma_max() const { return 0.1 * (upper - lower); }
};

struct HyperparamSpace {
  std::vector<SpaceDim> dims;

  int size() const { return static_cast<int>(dims.size()); }
};

struct Particle {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
  Eigen::VectorXd best_position;
  double best_fval;
  double fval;  // current generation
};

struct SwarmState {
  std::vector<Particle> particles;
  Eigen::VectorXd global_best_position;
  double global_best_fval;
  Eigen::VectorXd elite_mean_position;
  int iteration = 0;
};

struct MscPsoConfig {
  double eta_max = 0.9, eta_min = 0.4;
  double c1_max = 2.5, c1_min = 0.5;
  double c2_max = 2.5, c2_min = 0.5;
  double c3 = 0.4;
  double elite_fraction = 0.2;
  bool mutation = true;
  int t_max = 50;
  int swarm_size = 20;
  std::uint64_t seed = 0;

  /// Constant-coefficient configuration of the baseline PSO update.
  static MscPsoConfig vanilla(int t_max, int swarm_size, std::uint64_t seed);
};

struct ScheduleValues {
  double eta, c1, c2;
};

/// Linear schedules of inertia and learning factors, t in 1..t_max.
ScheduleValues schedule_params(const MscPsoConfig& config, int t);

/// Mean position of the top max(1, floor(elite_fraction*M)) particles by
/// current-generation fitness, ties broken by particle index.
Eigen::VectorXd elite_mean(const SwarmState& swarm, double elite_fraction);

using FitnessFunction = std::function<double(const Eigen::VectorXd&)>;

SwarmState init_swarm(const HyperparamSpace& space, const MscPsoConfig& config,
                      const FitnessFunction& fitness);

/// One generation: velocity/position updates with clamping and mutation, then
/// personal/elite/global best updates.
void pso_iterate(SwarmState& swarm, const HyperparamSpace& space, const MscPsoConfig& config,
                 const FitnessFunction& fitness);

/// Integer-flagged dims round to nearest; idempotent.
std::map<std::string, double> decode_position(const HyperparamSpace& space,
                                              const Eigen::VectorXd& position);

enum class Algorithm { msc_pso, pso, random_search };
Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm algorithm);

struct GenerationStat {
  int generation;
  double best_fval;
  double mean_fval;
  Eigen::VectorXd best_position;
};

struct OptimizeResult {
  Eigen::VectorXd best_position;
  double best_fval;
  std::vector<GenerationStat> trace;

  void write_trace_csv(const std::string& path, const HyperparamSpace& space) const;
};

OptimizeResult optimize(const HyperparamSpace& space, const FitnessFunction& fitness,
                        Algorithm algorithm, int swarm_size, int t_max, std::uint64_t seed);

// ---- inner (bi-level) solve -------------------------------------------------

struct InnerSettings {
  ActivationKind activation = ActivationKind::sine;
  DerivMethod method = DerivMethod::analytic;
  NewtonConfig newton;
};

struct InnerReport {
  Solution solution;
  double fval;
  std::vector<double> errors;  // per field
  std::vector<NewtonIteration> newton_trace;
  double assemble_seconds = 0;
  double solve_seconds = 0;
};

/// Builds networks and collocation from inner_seed, assembles and solves the
/// problem (Newton when nonlinear), and evaluates the fitness. Pure given
/// (problem, hyperparams, settings, inner_seed).
InnerReport inner_solve(const PdeProblem& problem,
                        const std::map<std::string, double>& hyperparams,
                        const InnerSettings& settings, std::uint64_t inner_seed);

/// Fitness of inner_solve; solver failures map to +infinity.
double inner_fitness(const PdeProblem& problem, const std::map<std::string, double>& hyperparams,
                     const InnerSettings& settings, std::uint64_t inner_seed);

CollocationSet sample_collocation(const PdeProblem& problem,
                                  const std::map<std::string, double>& hyperparams,
                                  std::uint64_t inner_seed);

}  // namespace sopf

#endif
