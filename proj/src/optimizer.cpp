#include "sopf/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "sopf/error.hpp"

namespace sopf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// splitmix64 step, used to derive independent substream seeds
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, int t, int particle) {
  return std::mt19937_64(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(t)),
                                  static_cast<std::uint64_t>(particle)));
}

double guarded(double fval) { return std::isfinite(fval) ? fval : kInf; }

}  // namespace

MscPsoConfig MscPsoConfig::vanilla(int t_max, int swarm_size, std::uint64_t seed) {
  MscPsoConfig config;
  config.eta_max = config.eta_min = 0.7;
  config.c1_max = config.c1_min = 1.5;
  config.c2_max = config.c2_min = 1.5;
  config.c3 = 0.0;
  config.mutation = false;
  config.t_max = t_max;
  config.swarm_size = swarm_size;
  config.seed = seed;
  return config;
}

ScheduleValues schedule_params(const MscPsoConfig& config, int t) {
  require(t >= 1 && t <= config.t_max, ErrorCode::invalid_argument,
          "schedule iteration out of range");
  const double frac = static_cast<double>(t) / config.t_max;
  return {config.eta_max - frac * (config.eta_max - config.eta_min),
          config.c1_max - frac * (config.c1_max - config.c1_min),
          config.c2_min + frac * (config.c2_max - config.c2_min)};
}

Eigen::VectorXd elite_mean(const SwarmState& swarm, double elite_fraction) {
  const int m = static_cast<int>(swarm.particles.size());
  require(m >= 1, ErrorCode::invalid_argument, "empty swarm");
  const int count = std::max(1, static_cast<int>(std::floor(elite_fraction * m)));
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return swarm.particles[a].fval < swarm.particles[b].fval;
  });
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(swarm.particles.front().position.size());
  for (int i = 0; i < count; ++i) mean += swarm.particles[order[i]].position;
  return mean / count;
}

SwarmState init_swarm(const HyperparamSpace& space, const MscPsoConfig& config,
                      const FitnessFunction& fitness) {
  require(config.swarm_size >= 1 && config.t_max >= 1, ErrorCode::invalid_argument,
          "budget must be positive");
  SwarmState swarm;
  swarm.iteration = 0;
  const int d = space.size();
  for (int i = 0; i < config.swarm_size; ++i) {
    auto gen = substream(config.seed, 0, i);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Particle particle;
    particle.position.resize(d);
    particle.velocity.resize(d);
    for (int j = 0; j < d; ++j)
      particle.position(j) =
          space.dims[j].lower + unit(gen) * (space.dims[j].upper - space.dims[j].lower);
    for (int j = 0; j < d; ++j)
      particle.velocity(j) = (2 * unit(gen) - 1) * space.dims[j].v_max();
    particle.fval = guarded(fitness(particle.position));
    particle.best_position = particle.position;
    particle.best_fval = particle.fval;
    swarm.particles.push_back(std::move(particle));
  }
  swarm.elite_mean_position = elite_mean(swarm, config.elite_fraction);
  swarm.global_best_fval = kInf;
  for (const auto& particle : swarm.particles) {
    if (particle.best_fval < swarm.global_best_fval) {
      swarm.global_best_fval = particle.best_fval;
      swarm.global_best_position = particle.best_position;
    }
  }
  return swarm;
}

void pso_iterate(SwarmState& swarm, const HyperparamSpace& space, const MscPsoConfig& config,
                 const FitnessFunction& fitness) {
  const int t = ++swarm.iteration;
  const auto [eta, c1, c2] = schedule_params(config, std::min(t, config.t_max));
  const int d = space.size();

  for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
    auto& particle = swarm.particles[i];
    auto gen = substream(config.seed, t, static_cast<int>(i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    for (int j = 0; j < d; ++j) {
      const double r1 = unit(gen), r2 = unit(gen), r3 = unit(gen);
      double v = eta * particle.velocity(j) +
                 c1 * r1 * (particle.best_position(j) - particle.position(j)) +
                 c2 * r2 * (swarm.global_best_position(j) - particle.position(j)) +
                 config.c3 * r3 * (swarm.elite_mean_position(j) - particle.position(j));
      particle.velocity(j) = std::clamp(v, -space.dims[j].v_max(), space.dims[j].v_max());
    }
    for (int j = 0; j < d; ++j) {
      double x = particle.position(j) + particle.velocity(j);
      if (config.mutation) {
        const double sigma =
            space.dims[j].sigma_max() * std::exp(-static_cast<double>(t) / config.t_max);
        x += sigma * normal(gen);
      }
      particle.position(j) = std::clamp(x, space.dims[j].lower, space.dims[j].upper);
    }
    particle.fval = guarded(fitness(particle.position));
    if (particle.fval < particle.best_fval) {
      particle.best_fval = particle.fval;
      particle.best_position = particle.position;
    }
  }
  swarm.elite_mean_position = elite_mean(swarm, config.elite_fraction);
  for (const auto& particle : swarm.particles) {
    if (particle.best_fval < swarm.global_best_fval) {
      swarm.global_best_fval = particle.best_fval;
      swarm.global_best_position = particle.best_position;
    }
  }
}

std::map<std::string, double> decode_position(const HyperparamSpace& space,
                                              const Eigen::VectorXd& position) {
  require(position.size() == space.size(), ErrorCode::invalid_argument,
          "position dimension mismatch");
  std::map<std::string, double> out;
  for (int j = 0; j < space.size(); ++j)
    out[space.dims[j].name] =
        space.dims[j].integer ? std::round(position(j)) : position(j);
  return out;
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "msc_pso") return Algorithm::msc_pso;
  if (name == "pso") return Algorithm::pso;
  if (name == "random_search" || name == "rand") return Algorithm::random_search;
  fail(ErrorCode::invalid_argument, "unknown algorithm: " + name);
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::msc_pso: return "msc_pso";
    case Algorithm::pso: return "pso";
    case Algorithm::random_search: return "random_search";
  }
  return "?";
}

void OptimizeResult::write_trace_csv(const std::string& path,
                                     const HyperparamSpace& space) const {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io_error, "cannot open " + path);
  out << "generation,best_fval,mean_fval";
  for (const auto& dim : space.dims) out << ",best_" << dim.name;
  out << "\n";
  out.precision(17);
  for (const auto& stat : trace) {
    out << stat.generation << "," << stat.best_fval << "," << stat.mean_fval;
    for (int j = 0; j < space.size(); ++j) out << "," << stat.best_position(j);
    out << "\n";
  }
}

OptimizeResult optimize(const HyperparamSpace& space, const FitnessFunction& fitness,
                        Algorithm algorithm, int swarm_size, int t_max, std::uint64_t seed) {
  require(swarm_size >= 1 && t_max >= 1, ErrorCode::invalid_argument,
          "budget must be positive");
  OptimizeResult result;
  if (algorithm == Algorithm::random_search) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    result.best_fval = kInf;
    Eigen::VectorXd x(space.size());
    for (int t = 1; t <= t_max; ++t) {
      double gen_sum = 0;
      for (int i = 0; i < swarm_size; ++i) {
        for (int j = 0; j < space.size(); ++j)
          x(j) = space.dims[j].lower + unit(gen) * (space.dims[j].upper - space.dims[j].lower);
        const double f = guarded(fitness(x));
        gen_sum += f;
        if (f < result.best_fval) {
          result.best_fval = f;
          result.best_position = x;
        }
      }
      result.trace.push_back({t, result.best_fval, gen_sum / swarm_size, result.best_position});
    }
    return result;
  }

  const MscPsoConfig config = algorithm == Algorithm::msc_pso
                                  ? [&] {
                                      MscPsoConfig c;
                                      c.t_max = t_max;
                                      c.swarm_size = swarm_size;
                                      c.seed = seed;
                                      return c;
                                    }()
                                  : MscPsoConfig::vanilla(t_max, swarm_size, seed);
  SwarmState swarm = init_swarm(space, config, fitness);
  for (int t = 1; t <= t_max; ++t) {
    pso_iterate(swarm, space, config, fitness);
    double gen_sum = 0;
    for (const auto& particle : swarm.particles) gen_sum += particle.fval;
    result.trace.push_back({t, swarm.global_best_fval, gen_sum / swarm.particles.size(),
                            swarm.global_best_position});
  }
  result.best_position = swarm.global_best_position;
  result.best_fval = swarm.global_best_fval;
  return result;
}

// ---- inner solve ------------------------------------------------------------

namespace {

double hyper(const std::map<std::string, double>& hyperparams, const std::string& name) {
  auto it = hyperparams.find(name);
  require(it != hyperparams.end(), ErrorCode::invalid_argument,
          "missing hyperparameter: " + name);
  return it->second;
}

int hyper_count(const std::map<std::string, double>& hyperparams, const std::string& name) {
  const int n = static_cast<int>(std::llround(hyper(hyperparams, name)));
  require(n >= 1, ErrorCode::invalid_argument, "hyperparameter " + name + " must be >= 1");
  return n;
}

}  // namespace

CollocationSet sample_collocation(const PdeProblem& problem,
                                  const std::map<std::string, double>& hyperparams,
                                  std::uint64_t inner_seed) {
  CollocationSet colloc;
  colloc.interior = sample_interior(problem.domain,
                                    hyper_count(hyperparams, problem.interior_count_param),
                                    mix_seed(inner_seed, 1000));
  for (std::size_t g = 0; g < problem.boundary_groups.size(); ++g) {
    const auto& spec = problem.boundary_groups[g];
    CollocationGroup group;
    group.geom = sample_boundary(problem.domain, hyper_count(hyperparams, spec.count_param),
                                 mix_seed(inner_seed, 2000 + g), spec.subset);
    group.lambda = hyper(hyperparams, spec.lambda_param);
    colloc.groups.push_back(std::move(group));
  }
  return colloc;
}

InnerReport inner_solve(const PdeProblem& problem,
                        const std::map<std::string, double>& hyperparams,
                        const InnerSettings& settings, std::uint64_t inner_seed) {
  using clock = std::chrono::steady_clock;
  std::vector<FeatureNetwork> nets;
  for (int f = 0; f < problem.num_fields(); ++f)
    nets.push_back(init_network(problem.domain.dimension,
                                hyper_count(hyperparams, problem.net_count_params[f]),
                                hyper(hyperparams, problem.omega_params[f]),
                                settings.activation, mix_seed(inner_seed, f)));

  const auto t0 = clock::now();
  const CollocationSet colloc = sample_collocation(problem, hyperparams, inner_seed);

  InnerReport report;
  if (problem.nonlinear.has_value()) {
    const auto t1 = clock::now();
    NewtonResult newton = newton_solve(problem, nets, colloc, settings.newton, settings.method);
    const auto t2 = clock::now();
    report.solution = std::move(newton.solution);
    report.newton_trace = std::move(newton.trace);
    report.assemble_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  } else {
    std::vector<Block> blocks;
    for (const auto& [op, rhs] : problem.interior_equations)
      blocks.push_back(assemble_block(nets, op, rhs, colloc.interior, std::nullopt,
                                      settings.method, "interior", 1.0));
    for (std::size_t g = 0; g < problem.boundary_groups.size(); ++g) {
      const auto& spec = problem.boundary_groups[g];
      const auto& group = colloc.groups[g];
      for (const auto& [op, data] : spec.equations)
        blocks.push_back(assemble_block(nets, op, data, group.geom.points, group.geom.normals,
                                        settings.method, spec.label, group.lambda));
    }
    const LinearSystem system = assemble_system(blocks);
    const auto t1 = clock::now();
    report.solution = solve_min_norm_lsq(system, nets);
    const auto t2 = clock::now();
    report.assemble_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  }
  report.errors = field_errors(problem, report.solution);
  report.fval = 0;
  for (double e : report.errors) report.fval += e;
  return report;
}

double inner_fitness(const PdeProblem& problem, const std::map<std::string, double>& hyperparams,
                     const InnerSettings& settings, std::uint64_t inner_seed) {
  try {
    return inner_solve(problem, hyperparams, settings, inner_seed).fval;
  } catch (const std::exception&) {
    return kInf;
  }
}

}  // namespace sopf
