#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sopf/assembly.hpp"
#include "sopf/error.hpp"

using namespace sopf;

namespace {

LinearSystem raw_system(Eigen::MatrixXd a, Eigen::VectorXd b) {
  return {std::move(a), std::move(b), {}};
}

FeatureNetwork dummy_net(int dim = 1, int width = 1) {
  return FeatureNetwork(dim, width, 1.0, ActivationKind::sine, 1);
}

}  // namespace

TEST_CASE("identity system solves exactly") {
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  const Solution solution =
      solve_min_norm_lsq(raw_system(Eigen::MatrixXd::Identity(3, 3), b), {dummy_net(1, 3)});
  CHECK((solution.alpha - b).norm() < 1e-14);
  CHECK(solution.residual_norm < 1e-14);
}

TEST_CASE("overdetermined column matches the normal-equations oracle") {
  Eigen::MatrixXd a(2, 1);
  a << 1, 1;
  Eigen::VectorXd b(2);
  b << 1, 3;
  const Solution solution = solve_min_norm_lsq(raw_system(a, b), {dummy_net()});
  // alpha = (A^T A)^{ -1 } A^T b = 2
  CHECK(solution.alpha(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(solution.residual_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("rank-deficient row takes the minimum-norm solution") {
  Eigen::MatrixXd a(1, 2);
  a << 1, 1;
  Eigen::VectorXd b(1);
  b << 2;
  const Solution solution = solve_min_norm_lsq(raw_system(a, b), {dummy_net(1, 2)});
  CHECK(solution.alpha(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(solution.alpha(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("random tall systems match the pseudo-inverse oracle") {
  std::srand(99);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd a = Eigen::MatrixXd::Random(40, 12);
    const Eigen::VectorXd b = Eigen::VectorXd::Random(40);
    const Solution solution = solve_min_norm_lsq(raw_system(a, b), {dummy_net(1, 12)});
    const Eigen::VectorXd oracle =
        (a.transpose() * a).ldlt().solve(a.transpose() * b);
    CHECK((solution.alpha - oracle).norm() / oracle.norm() < 1e-10);
    CHECK(solution.residual_norm ==
          doctest::Approx((a * solution.alpha - b).norm()).epsilon(1e-12));
  }
}

TEST_CASE("non-finite entries are rejected") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  a(0, 0) = std::nan("");
  CHECK_THROWS_AS(solve_min_norm_lsq(raw_system(a, Eigen::VectorXd::Ones(2)), {dummy_net(1, 2)}),
                  Error);
}

TEST_CASE("assemble_system stacks lambda-weighted blocks") {
  Block op{Eigen::MatrixXd::Ones(2, 2), Eigen::VectorXd::Ones(2), "interior", 1.0};
  Block bc{Eigen::MatrixXd::Ones(1, 2), 2 * Eigen::VectorXd::Ones(1), "bc", 10.0};
  const LinearSystem system = assemble_system({op, bc});
  REQUIRE(system.matrix.rows() == 3);
  CHECK(system.matrix.row(2)(0) == doctest::Approx(10.0));
  CHECK(system.rhs(2) == doctest::Approx(20.0));
  REQUIRE(system.block_index.size() == 2);
  CHECK(system.block_index[1].label == "bc");
  CHECK(system.block_index[1].row_begin == 2);
  CHECK(system.block_index[1].row_end == 3);
}

TEST_CASE("lambda rescaling leaves a consistent system's solution unchanged") {
  // manufactured truth inside the span: alpha* applied to features
  const FeatureNetwork net(1, 20, 3.0, ActivationKind::sine, 21);
  const Eigen::VectorXd alpha_star = Eigen::VectorXd::LinSpaced(20, -1.0, 1.0);
  Eigen::MatrixXd interior(30, 1), bc(2, 1);
  interior.col(0).setLinSpaced(30, 0.05, 0.95);
  bc << 0.0, 1.0;

  auto truth = [&](const Eigen::MatrixXd& pts, const MultiIndex& m) {
    return (net.eval_derivative(m, pts) * alpha_star).eval();
  };
  const Eigen::VectorXd f = -truth(interior, MultiIndex({2}));
  const Eigen::VectorXd g = truth(bc, MultiIndex::zero(1));

  auto solve_with_lambda = [&](double lambda) {
    Block op{-net.eval_derivative(MultiIndex({2}), interior), f, "interior", 1.0};
    Block dirichlet{net.eval(bc), g, "bc", lambda};
    return solve_min_norm_lsq(assemble_system({op, dirichlet}), {net});
  };
  const Solution base = solve_with_lambda(1.0);
  const Solution scaled = solve_with_lambda(1000.0);
  // rank truncation may drop near-null directions of alpha, so compare the
  // predicted function values rather than the coefficients
  Eigen::MatrixXd eval(50, 1);
  eval.col(0).setLinSpaced(50, 0.0, 1.0);
  const Eigen::VectorXd want = truth(eval, MultiIndex::zero(1));
  const Eigen::VectorXd got_base = evaluate_solution(base, 0, eval, MultiIndex::zero(1));
  const Eigen::VectorXd got_scaled = evaluate_solution(scaled, 0, eval, MultiIndex::zero(1));
  CHECK((got_base - want).norm() / want.norm() < 1e-8);
  CHECK((got_scaled - got_base).norm() / want.norm() < 1e-8);
}

TEST_CASE("assemble_block analytic vs fd derivative paths agree loosely") {
  const FeatureNetwork net(2, 15, 2.0, ActivationKind::tanh, 8);
  Eigen::MatrixXd pts = 0.4 * Eigen::MatrixXd::Random(10, 2);
  OperatorSpec laplace = OperatorSpec::negative_laplacian(2);
  RhsFunction zero = [](const Eigen::VectorXd&, const Eigen::VectorXd*) { return 0.0; };
  const Block analytic =
      assemble_block({net}, laplace, zero, pts, std::nullopt, DerivMethod::analytic);
  const Block fd = assemble_block({net}, laplace, zero, pts, std::nullopt, DerivMethod::fd);
  CHECK((analytic.matrix - fd.matrix).norm() / analytic.matrix.norm() < 1e-4);
  CHECK((analytic.matrix - fd.matrix).norm() > 0);
}

TEST_CASE("multi-field blocks select the right column ranges") {
  const FeatureNetwork net_u(1, 4, 1.0, ActivationKind::sine, 1);
  const FeatureNetwork net_v(1, 6, 1.0, ActivationKind::sine, 2);
  Eigen::MatrixXd pts = Eigen::MatrixXd::Random(3, 1);
  OperatorSpec id_v = OperatorSpec::identity(1, 1);
  RhsFunction zero = [](const Eigen::VectorXd&, const Eigen::VectorXd*) { return 0.0; };
  const Block block = assemble_block({net_u, net_v}, id_v, zero, pts, std::nullopt);
  REQUIRE(block.matrix.cols() == 10);
  CHECK(block.matrix.leftCols(4).norm() == 0.0);
  CHECK(block.matrix.rightCols(6).norm() > 0.0);
}

TEST_CASE("evaluate_solution applies alpha to derivative features") {
  const FeatureNetwork net(1, 5, 2.0, ActivationKind::sine, 33);
  Solution solution;
  solution.networks = {net};
  solution.alpha = Eigen::VectorXd::Random(5);
  Eigen::MatrixXd pts = Eigen::MatrixXd::Random(4, 1);
  const Eigen::VectorXd direct = net.eval_derivative(MultiIndex({1}), pts) * solution.alpha;
  CHECK((evaluate_solution(solution, 0, pts, MultiIndex({1})) - direct).norm() < 1e-14);
}

TEST_CASE("l2 relative error definition and degenerate reference") {
  Eigen::VectorXd truth(2), pred(2);
  truth << 3, 4;
  pred << 3, 5;
  CHECK(l2_relative_error(pred, truth) == doctest::Approx(1.0 / 5.0));
  CHECK_THROWS_AS(l2_relative_error(pred, Eigen::VectorXd::Zero(2)), Error);
}
