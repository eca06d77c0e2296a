#include "sopf/nonlinear.hpp"

#include <cmath>
#include <fstream>

#include "sopf/error.hpp"

namespace sopf {

void NewtonResult::write_trace_csv(const std::string& path) const {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io_error, "cannot open " + path);
  out << "iter,residual_norm,step_norm\n";
  out.precision(17);
  for (const auto& it : trace)
    out << it.iter << "," << it.residual_norm << "," << it.step_norm << "\n";
}

NewtonResult newton_solve(const PdeProblem& problem, const std::vector<FeatureNetwork>& nets,
                          const CollocationSet& colloc, const NewtonConfig& config,
                          DerivMethod method) {
  require(problem.nonlinear.has_value(), ErrorCode::invalid_argument,
          "newton_solve needs a problem with a nonlinear term");
  require(problem.num_fields() == 1 && problem.interior_equations.size() == 1,
          ErrorCode::invalid_argument, "nonlinear pipeline supports single-field problems");
  require(config.max_iters >= 1, ErrorCode::invalid_argument, "max_iters must be >= 1");
  require(config.damping > 0 && config.damping <= 1, ErrorCode::invalid_argument,
          "damping must be in (0, 1]");

  const auto& [interior_spec, forcing] = problem.interior_equations.front();
  const Block linear_block = assemble_block(nets, interior_spec, forcing, colloc.interior,
                                            std::nullopt, method, "interior", 1.0);
  const Eigen::MatrixXd features = nets.front().eval(colloc.interior);

  std::vector<Block> boundary_blocks;
  for (std::size_t g = 0; g < problem.boundary_groups.size(); ++g) {
    const auto& spec = problem.boundary_groups[g];
    const auto& group = colloc.groups[g];
    for (const auto& [op, data] : spec.equations)
      boundary_blocks.push_back(assemble_block(nets, op, data, group.geom.points,
                                               group.geom.normals, method, spec.label,
                                               group.lambda));
  }

  const auto& g = problem.nonlinear->g;
  const auto& g_prime = problem.nonlinear->g_prime;

  NewtonResult result;
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(nets.front().width());
  result.solution.networks = nets;
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const Eigen::VectorXd u = features * alpha;
    Block interior = linear_block;
    Eigen::VectorXd slope(u.size());
    for (Eigen::Index p = 0; p < u.size(); ++p) {
      slope(p) = g_prime(u(p));
      interior.rhs(p) += -g(u(p)) + slope(p) * u(p);
    }
    interior.matrix += slope.asDiagonal() * features;

    std::vector<Block> blocks{std::move(interior)};
    blocks.insert(blocks.end(), boundary_blocks.begin(), boundary_blocks.end());
    const LinearSystem system = assemble_system(blocks);
    Solution step_solution = solve_min_norm_lsq(system, {nets.front()});

    const Eigen::VectorXd step = step_solution.alpha - alpha;
    alpha += config.damping * step;
    if (!alpha.allFinite())
      fail(ErrorCode::divergence,
           "newton iterate became non-finite at iteration " + std::to_string(iter));

    result.trace.push_back({iter, step_solution.residual_norm, step.norm()});
    if (step.norm() / (1 + alpha.norm()) <= config.abs_tol) break;
  }
  result.solution.alpha = alpha;
  // residual of the last linearized system at the final iterate
  result.solution.residual_norm = result.trace.back().residual_norm;
  return result;
}

}  // namespace sopf
