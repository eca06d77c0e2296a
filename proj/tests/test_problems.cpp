#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sopf/error.hpp"
#include "sopf/fd.hpp"
#include "sopf/optimizer.hpp"
#include "sopf/problems.hpp"

using namespace sopf;

namespace {

constexpr double kPi = std::numbers::pi;

PointField field_of(const PdeProblem& problem, int f = 0) {
  return [&problem, f](const Eigen::VectorXd& x) { return problem.analytic[f](x); };
}

// laplacian of a scalar field by second-order central differences
double fd_laplacian(const PointField& u, const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::MatrixXd pt = x.transpose();
  double acc = 0;
  for (int j = 0; j < x.size(); ++j)
    acc += fd_derivative(u, {FdKind::central2, h}, pt, {j})(0);
  return acc;
}

}  // namespace

TEST_CASE("unknown problem id is rejected") {
  CHECK_THROWS_AS(make_problem("bogus"), Error);
}

TEST_CASE("hyperparameter names cover every advertised knob") {
  CHECK(make_problem("koch_poisson").hyperparam_names() ==
        std::vector<std::string>{"N", "omega", "lambda", "N1", "N2"});
  CHECK(make_problem("wave1d").hyperparam_names() ==
        std::vector<std::string>{"N", "omega", "lambda1", "lambda2", "N1", "N2", "N3"});
  CHECK(make_problem("lame").hyperparam_names() ==
        std::vector<std::string>{"Nu", "Nv", "omega1", "omega2", "lambda1", "lambda2", "N1",
                                 "N2", "N3"});
}

TEST_CASE("eval point sets have the documented shapes") {
  CHECK(make_problem("poisson1d_sweep").eval_points().rows() == 1000);
  CHECK(make_problem("wave1d").eval_points().rows() == 10000);
  const auto& koch_pts = make_problem("koch_poisson", {{"level", 3.0}}).eval_points();
  CHECK(koch_pts.rows() == 10000);
  const auto problem = make_problem("highdim_poisson", {{"d", 5.0}});
  CHECK(problem.eval_points().rows() == 10000);
  CHECK(problem.eval_points().cols() == 5);
}

TEST_CASE("sweep forcing is consistent with the analytic solution") {
  const PdeProblem p = make_problem("poisson1d_sweep", {{"kappa", 6.0}});
  const PointField u = field_of(p);
  Eigen::VectorXd x(1);
  for (double xi : {-0.8, -0.1, 0.4, 0.9}) {
    x << xi;
    double f = 0;
    const Eigen::VectorXd* no_normal = nullptr;
    for (const auto& term : p.interior_equations[0].first.terms) (void)term;
    const double rhs = p.interior_equations[0].second(x, no_normal);
    CHECK(-fd_laplacian(u, x) == doctest::Approx(rhs).epsilon(1e-5));
    (void)f;
  }
  // endpoints carry the boundary values of the analytic solution
  x << 1.0;
  CHECK(p.analytic[0](x) == doctest::Approx(std::sin(2 * kPi) + std::sin(6 * kPi)).epsilon(1e-12));
}

TEST_CASE("koch forcing equals minus laplacian of the analytic solution") {
  const PdeProblem p = make_problem("koch_poisson", {{"gamma", 4.0}});
  const PointField u = field_of(p);
  Eigen::VectorXd x(2);
  x << 0.41, 0.58;
  const double rhs = p.interior_equations[0].second(x, nullptr);
  CHECK(-fd_laplacian(u, x) == doctest::Approx(rhs).epsilon(1e-5));
}

TEST_CASE("wave analytic solution satisfies u_tt = 100 u_xx") {
  const PdeProblem p = make_problem("wave1d");
  const PointField u = field_of(p);
  Eigen::MatrixXd pt(1, 2);
  pt << 0.37, 0.22;
  const double u_tt = fd_derivative(u, {FdKind::central2, 1e-5}, pt, {1})(0);
  const double u_xx = fd_derivative(u, {FdKind::central2, 1e-5}, pt, {0})(0);
  CHECK(u_tt == doctest::Approx(100 * u_xx).epsilon(1e-4));
}

TEST_CASE("highdim forcing matches minus laplacian in d=4") {
  const PdeProblem p = make_problem("highdim_poisson", {{"d", 4.0}});
  const PointField u = field_of(p);
  Eigen::VectorXd x(4);
  x << 0.2, -0.5, 0.7, 0.1;
  CHECK(-fd_laplacian(u, x) ==
        doctest::Approx(p.interior_equations[0].second(x, nullptr)).epsilon(1e-5));
}

TEST_CASE("plate rigidity and biharmonic consistency") {
  const PlateConstants c;
  CHECK(c.rigidity() ==
        doctest::Approx(c.E * c.h * c.h * c.h / (12 * (1 - c.nu * c.nu))).epsilon(1e-15));
  const PdeProblem p = make_problem("plate");
  const PointField u = field_of(p);
  Eigen::MatrixXd pt(1, 2);
  pt << 0.7, 1.2;
  const double u4x = fd_derivative(u, FdScheme::with_default_step(FdKind::fourth), pt, {0})(0);
  const double u4y = fd_derivative(u, FdScheme::with_default_step(FdKind::fourth), pt, {1})(0);
  const double u22 =
      fd_derivative(u, FdScheme::with_default_step(FdKind::mixed22), pt, {0, 1})(0);
  const double q = p.interior_equations[0].second(pt.row(0).transpose(), nullptr);
  CHECK(c.rigidity() * (u4x + 2 * u22 + u4y) == doctest::Approx(q).epsilon(1e-3));
}

TEST_CASE("plate analytic fields derive from the deflection") {
  const PlateConstants c;
  const PdeProblem p = make_problem("plate");
  const PointField u = field_of(p);
  Eigen::MatrixXd pts(2, 2);
  pts << 0.5, 0.8, 1.3, 2.1;
  const PlateFields fields = plate_analytic_fields(c, pts);
  const double rigidity = c.rigidity();
  for (int i = 0; i < 2; ++i) {
    Eigen::MatrixXd pt = pts.row(i);
    const double u20 = fd_derivative(u, {FdKind::central2, 1e-4}, pt, {0})(0);
    const double u02 = fd_derivative(u, {FdKind::central2, 1e-4}, pt, {1})(0);
    const double u11 = fd_derivative(u, {FdKind::mixed2, 1e-4}, pt, {0, 1})(0);
    CHECK(fields.m_x1(i) == doctest::Approx(-rigidity * (u20 + c.nu * u02)).epsilon(1e-5));
    CHECK(fields.m_x2(i) == doctest::Approx(-rigidity * (u02 + c.nu * u20)).epsilon(1e-5));
    CHECK(fields.m_x1x2(i) == doctest::Approx(rigidity * (1 - c.nu) * u11).epsilon(1e-5));
  }
}

TEST_CASE("lame analytic displacements satisfy the boundary conditions") {
  const LameConstants c;
  const PdeProblem p = make_problem("lame");
  Eigen::VectorXd x(2);
  // clamped inner circle: u = v = 0 at radius a
  for (double th : {0.3, 2.0, 4.4}) {
    x << c.a * std::cos(th), c.a * std::sin(th);
    CHECK(p.analytic[0](x) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.analytic[1](x) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("lame traction rhs rotates the loads with the normal") {
  Eigen::VectorXd pt(2), n(2);
  pt << 2.0, 0.0;
  n << 1.0, 0.0;
  const auto [h1, h2] = lame_traction_rhs(pt, n, 30.0, 2.0);
  CHECK(h1 == doctest::Approx(-30.0));
  CHECK(h2 == doctest::Approx(-2.0));
  n << 0.0, 1.0;
  const auto [g1, g2] = lame_traction_rhs(pt, n, 30.0, 2.0);
  CHECK(g1 == doctest::Approx(2.0));
  CHECK(g2 == doctest::Approx(-30.0));
  n << 2.0, 0.0;
  CHECK_THROWS_AS(lame_traction_rhs(pt, n, 30.0, 2.0), Error);
}

TEST_CASE("helmholtz forcing is consistent with the nonlinearity") {
  const PdeProblem p = make_problem("helmholtz_nl");
  REQUIRE(p.nonlinear.has_value());
  const PointField u = field_of(p);
  Eigen::VectorXd x(2);
  x << 0.31, 0.67;
  const double lap = fd_laplacian(u, x, 1e-4);
  const double rhs = p.interior_equations[0].second(x, nullptr);
  // f = lap(u) + g(u) with g(v) = -100 v + 10 cos(v)
  CHECK(lap + p.nonlinear->g(u(x)) == doctest::Approx(rhs).epsilon(1e-4));
  // g' consistent with g
  const double v0 = 0.37, h = 1e-6;
  CHECK(p.nonlinear->g_prime(v0) ==
        doctest::Approx((p.nonlinear->g(v0 + h) - p.nonlinear->g(v0 - h)) / (2 * h))
            .epsilon(1e-6));
}

TEST_CASE("manufactured solve recovers machine-level accuracy") {
  // gamma low enough for a small network; checks problems + assembly end to end
  const PdeProblem p = make_problem("koch_poisson", {{"level", 2.0}, {"gamma", 3.0}});
  InnerSettings settings;
  const InnerReport report = inner_solve(
      p, {{"N", 250}, {"omega", 6}, {"lambda", 100}, {"N1", 700}, {"N2", 400}}, settings, 5);
  CHECK(report.fval < 1e-10);
}

TEST_CASE("fitness sums field errors") {
  const PdeProblem p = make_problem("lame");
  InnerSettings settings;
  const InnerReport report = inner_solve(
      p,
      {{"Nu", 200}, {"Nv", 200}, {"omega1", 6}, {"omega2", 6}, {"lambda1", 1000},
       {"lambda2", 1000}, {"N1", 800}, {"N2", 400}, {"N3", 300}},
      settings, 5);
  REQUIRE(report.errors.size() == 2);
  CHECK(report.fval == doctest::Approx(report.errors[0] + report.errors[1]).epsilon(1e-12));
}
