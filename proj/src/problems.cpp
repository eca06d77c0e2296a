#include "sopf/problems.hpp"

#include <cmath>
#include <numbers>

#include "sopf/error.hpp"

namespace sopf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kEvalSeed = 1234;

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

RhsFunction from_scalar_field(ScalarField f) {
  return [f = std::move(f)](const Eigen::VectorXd& x, const Eigen::VectorXd*) { return f(x); };
}

RhsFunction zero_rhs() {
  return [](const Eigen::VectorXd&, const Eigen::VectorXd*) { return 0.0; };
}

MultiIndex mi(std::vector<int> orders) { return MultiIndex(std::move(orders)); }

// Posed on [-1, 1] (the unit-interval problem under t = (x+1)/2); the change of
// variables leaves the relative error invariant and keeps the represented
// frequency band of a width-omega sine layer aligned with kappa.
PdeProblem sweep_problem(double kappa) {
  PdeProblem problem;
  problem.id = "poisson1d_sweep";
  problem.domain = Domain::hypercube(1, -1.0, 1.0);
  problem.field_names = {"u"};
  problem.net_count_params = {"N"};
  problem.omega_params = {"omega"};
  ScalarField u = [kappa](const Eigen::VectorXd& x) {
    const double t = (x(0) + 1) / 2;
    return std::sin(2 * kPi * t) + std::sin(kappa * kPi * t);
  };
  ScalarField f = [kappa](const Eigen::VectorXd& x) {
    const double t = (x(0) + 1) / 2;
    return kPi * kPi * std::sin(2 * kPi * t) +
           kappa * kappa * kPi * kPi / 4 * std::sin(kappa * kPi * t);
  };
  problem.interior_equations.push_back(
      {OperatorSpec::negative_laplacian(1), from_scalar_field(f)});
  problem.boundary_groups.push_back(
      {"dirichlet", "", "N2", "lambda", {{OperatorSpec::identity(1), from_scalar_field(u)}}});
  problem.analytic = {u};
  return problem;
}

PdeProblem koch_problem(int level, double gamma) {
  PdeProblem problem;
  problem.id = "koch_poisson";
  problem.domain = Domain::koch(level);
  problem.field_names = {"u"};
  problem.net_count_params = {"N"};
  problem.omega_params = {"omega"};
  ScalarField u = [gamma](const Eigen::VectorXd& x) {
    return std::sin(gamma * x(0)) * std::sin(gamma * x(1));
  };
  ScalarField f = [gamma](const Eigen::VectorXd& x) {
    return 2 * gamma * gamma * std::sin(gamma * x(0)) * std::sin(gamma * x(1));
  };
  problem.interior_equations.push_back(
      {OperatorSpec::negative_laplacian(2), from_scalar_field(f)});
  problem.boundary_groups.push_back(
      {"dirichlet", "", "N2", "lambda", {{OperatorSpec::identity(2), from_scalar_field(u)}}});
  problem.analytic = {u};
  return problem;
}

PdeProblem wave_problem() {
  PdeProblem problem;
  problem.id = "wave1d";
  // coordinates (x, t) on the unit space-time box
  problem.domain = Domain::hypercube(2, 0.0, 1.0);
  problem.field_names = {"u"};
  problem.net_count_params = {"N"};
  problem.omega_params = {"omega"};
  ScalarField u = [](const Eigen::VectorXd& p) {
    return std::sin(kPi * p(0)) * std::cos(10 * kPi * p(1)) +
           std::sin(2 * kPi * p(0)) * std::cos(20 * kPi * p(1));
  };
  OperatorSpec wave_op;
  wave_op.terms.push_back({constant_coeff(1.0), mi({0, 2}), 0, false});
  wave_op.terms.push_back({constant_coeff(-100.0), mi({2, 0}), 0, false});
  problem.interior_equations.push_back({wave_op, zero_rhs()});

  // u on the spatial sides plus the initial-time face
  problem.boundary_groups.push_back({"dirichlet", "x0_min,x0_max,x1_min", "N2", "lambda1",
                                     {{OperatorSpec::identity(2), from_scalar_field(u)}}});
  // initial velocity on the t=0 face
  OperatorSpec dt;
  dt.terms.push_back({constant_coeff(1.0), mi({0, 1}), 0, false});
  problem.boundary_groups.push_back({"neumann", "x1_min", "N3", "lambda2", {{dt, zero_rhs()}}});
  problem.analytic = {u};
  return problem;
}

PdeProblem plate_problem() {
  PdeProblem problem;
  const PlateConstants c;
  problem.id = "plate";
  problem.domain = Domain::rectangle(c.a, c.b);
  problem.field_names = {"u"};
  problem.net_count_params = {"N"};
  problem.omega_params = {"omega"};
  const double rigidity = c.rigidity();

  ScalarField u = [c](const Eigen::VectorXd& x) {
    const double amp =
        c.q0 / (c.rigidity() * std::pow(kPi, 4) *
                std::pow(1 / (c.a * c.a) + 1 / (c.b * c.b), 2));
    return amp * std::sin(kPi * x(0) / c.a) * std::sin(kPi * x(1) / c.b);
  };
  ScalarField q = [c](const Eigen::VectorXd& x) {
    return c.q0 * std::sin(kPi * x(0) / c.a) * std::sin(kPi * x(1) / c.b);
  };

  OperatorSpec biharmonic;
  biharmonic.terms.push_back({constant_coeff(rigidity), mi({4, 0}), 0, false});
  biharmonic.terms.push_back({constant_coeff(2 * rigidity), mi({2, 2}), 0, false});
  biharmonic.terms.push_back({constant_coeff(rigidity), mi({0, 4}), 0, false});
  problem.interior_equations.push_back({biharmonic, from_scalar_field(q)});

  problem.boundary_groups.push_back({"displacement", "", "N2", "lambda1",
                                     {{OperatorSpec::identity(2), zero_rhs()}}});

  // moment condition; the normal selects the bending direction per face
  const double nu = c.nu;
  OperatorSpec moment;
  moment.terms.push_back(
      {[rigidity, nu](const Eigen::VectorXd&, const Eigen::VectorXd* n) {
         const double n1 = (*n)(0);
         return -rigidity * (n1 * n1 + nu * (1 - n1 * n1));
       },
       mi({2, 0}), 0, true});
  moment.terms.push_back(
      {[rigidity, nu](const Eigen::VectorXd&, const Eigen::VectorXd* n) {
         const double n2 = (*n)(1);
         return -rigidity * (n2 * n2 + nu * (1 - n2 * n2));
       },
       mi({0, 2}), 0, true});
  problem.boundary_groups.push_back({"moment", "", "N3", "lambda2", {{moment, zero_rhs()}}});
  problem.analytic = {u};
  return problem;
}

PdeProblem highdim_problem(int d) {
  require(d >= 2, ErrorCode::invalid_argument, "highdim_poisson requires d >= 2");
  PdeProblem problem;
  problem.id = "highdim_poisson";
  problem.domain = Domain::hypercube(d, -1.0, 1.0);
  problem.field_names = {"u"};
  problem.net_count_params = {"N"};
  problem.omega_params = {"omega"};
  ScalarField u = [d](const Eigen::VectorXd& x) {
    const double s = x.sum() / d;
    return s * s + std::sin(s);
  };
  ScalarField f = [d](const Eigen::VectorXd& x) {
    const double s = x.sum() / d;
    return (std::sin(s) - 2) / d;
  };
  problem.interior_equations.push_back(
      {OperatorSpec::negative_laplacian(d), from_scalar_field(f)});
  problem.boundary_groups.push_back(
      {"dirichlet", "", "N2", "lambda1", {{OperatorSpec::identity(d), from_scalar_field(u)}}});
  problem.analytic = {u};
  return problem;
}

PdeProblem lame_problem() {
  PdeProblem problem;
  const LameConstants c;
  problem.id = "lame";
  problem.domain = Domain::annulus(c.a, c.b);
  problem.field_names = {"u", "v"};
  problem.net_count_params = {"Nu", "Nv"};
  problem.omega_params = {"omega1", "omega2"};

  const double a2 = c.a * c.a;
  const double A = c.A(), B = c.B();
  ScalarField u = [A, B, a2](const Eigen::VectorXd& x) {
    const double r2 = x.squaredNorm();
    return A * (a2 / r2 - 1) * x(0) + B * (1 - a2 / r2) * x(1);
  };
  ScalarField v = [A, B, a2](const Eigen::VectorXd& x) {
    const double r2 = x.squaredNorm();
    return A * (a2 / r2 - 1) * x(1) - B * (1 - a2 / r2) * x(0);
  };

  const double stiff = c.E / (1 - c.mu * c.mu);
  const double half_minus = (1 - c.mu) / 2, half_plus = (1 + c.mu) / 2;

  OperatorSpec f1;
  f1.terms.push_back({constant_coeff(stiff), mi({2, 0}), 0, false});
  f1.terms.push_back({constant_coeff(stiff * half_minus), mi({0, 2}), 0, false});
  f1.terms.push_back({constant_coeff(stiff * half_plus), mi({1, 1}), 1, false});
  OperatorSpec f2;
  f2.terms.push_back({constant_coeff(stiff), mi({0, 2}), 1, false});
  f2.terms.push_back({constant_coeff(stiff * half_minus), mi({2, 0}), 1, false});
  f2.terms.push_back({constant_coeff(stiff * half_plus), mi({1, 1}), 0, false});
  problem.interior_equations.push_back({f1, zero_rhs()});
  problem.interior_equations.push_back({f2, zero_rhs()});

  auto normal_coeff = [stiff](int component, double scale) {
    return [stiff, component, scale](const Eigen::VectorXd&, const Eigen::VectorXd* n) {
      return stiff * scale * (*n)(component);
    };
  };
  // traction rows of the outer boundary
  OperatorSpec b1;
  b1.terms.push_back({normal_coeff(0, 1.0), mi({1, 0}), 0, true});
  b1.terms.push_back({normal_coeff(1, half_minus), mi({0, 1}), 0, true});
  b1.terms.push_back({normal_coeff(0, c.mu), mi({0, 1}), 1, true});
  b1.terms.push_back({normal_coeff(1, half_minus), mi({1, 0}), 1, true});
  OperatorSpec b2;
  b2.terms.push_back({normal_coeff(1, c.mu), mi({1, 0}), 0, true});
  b2.terms.push_back({normal_coeff(0, half_minus), mi({0, 1}), 0, true});
  b2.terms.push_back({normal_coeff(1, 1.0), mi({0, 1}), 1, true});
  b2.terms.push_back({normal_coeff(0, half_minus), mi({1, 0}), 1, true});
  const double q1 = c.q1, q2 = c.q2;
  RhsFunction h1 = [q1, q2](const Eigen::VectorXd&, const Eigen::VectorXd* n) {
    return -q1 * (*n)(0) + q2 * (*n)(1);
  };
  RhsFunction h2 = [q1, q2](const Eigen::VectorXd&, const Eigen::VectorXd* n) {
    return -q1 * (*n)(1) - q2 * (*n)(0);
  };
  problem.boundary_groups.push_back({"traction", "outer", "N2", "lambda1",
                                     {{b1, h1}, {b2, h2}}});
  problem.boundary_groups.push_back({"clamped", "inner", "N3", "lambda2",
                                     {{OperatorSpec::identity(2, 0), zero_rhs()},
                                      {OperatorSpec::identity(2, 1), zero_rhs()}}});
  problem.analytic = {u, v};
  return problem;
}

PdeProblem helmholtz_problem() {
  PdeProblem problem;
  problem.id = "helmholtz_nl";
  problem.domain = Domain::hypercube(2, 0.0, 1.0);
  problem.field_names = {"u"};
  problem.net_count_params = {"N"};
  problem.omega_params = {"omega"};
  ScalarField u = [](const Eigen::VectorXd& x) {
    return 4 * std::cos(3 * kPi * x(0) * x(0)) * std::sin(3 * kPi * x(1) * x(1));
  };
  // f = lap(u) - 100 u + 10 cos(u) at the analytic u
  ScalarField f = [u](const Eigen::VectorXd& x) {
    const double p = 3 * kPi * x(0) * x(0), q = 3 * kPi * x(1) * x(1);
    const double lap = -24 * kPi * std::sin(p) * std::sin(q) +
                       24 * kPi * std::cos(p) * std::cos(q) -
                       144 * kPi * kPi * (x(0) * x(0) + x(1) * x(1)) * std::cos(p) * std::sin(q);
    const double uu = u(x);
    return lap - 100 * uu + 10 * std::cos(uu);
  };
  OperatorSpec laplacian;
  laplacian.terms.push_back({constant_coeff(1.0), mi({2, 0}), 0, false});
  laplacian.terms.push_back({constant_coeff(1.0), mi({0, 2}), 0, false});
  problem.interior_equations.push_back({laplacian, from_scalar_field(f)});
  problem.boundary_groups.push_back(
      {"dirichlet", "", "N2", "lambda", {{OperatorSpec::identity(2), from_scalar_field(u)}}});
  problem.analytic = {u};
  problem.nonlinear =
      NonlinearTerm{[](double v) { return -100 * v + 10 * std::cos(v); },
                    [](double v) { return -100 - 10 * std::sin(v); }};
  return problem;
}

}  // namespace

std::vector<std::string> PdeProblem::hyperparam_names() const {
  std::vector<std::string> names;
  for (const auto& n : net_count_params) names.push_back(n);
  for (const auto& n : omega_params) names.push_back(n);
  for (const auto& g : boundary_groups)
    if (std::find(names.begin(), names.end(), g.lambda_param) == names.end())
      names.push_back(g.lambda_param);
  names.push_back(interior_count_param);
  for (const auto& g : boundary_groups) names.push_back(g.count_param);
  return names;
}

const Eigen::MatrixXd& PdeProblem::eval_points() const {
  if (eval_points_.size() > 0) return eval_points_;
  const int d = domain.dimension;
  if (domain.kind == Domain::Kind::box && d == 1) {
    const int n = 1000;
    eval_points_.resize(n, 1);
    for (int i = 0; i < n; ++i)
      eval_points_(i, 0) = domain.lo(0) + (i + 0.5) / n * (domain.hi(0) - domain.lo(0));
  } else if (domain.kind == Domain::Kind::box && d == 2) {
    const int n = 100;
    eval_points_.resize(n * n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        eval_points_(i * n + j, 0) =
            domain.lo(0) + (i + 0.5) / n * (domain.hi(0) - domain.lo(0));
        eval_points_(i * n + j, 1) =
            domain.lo(1) + (j + 0.5) / n * (domain.hi(1) - domain.lo(1));
      }
  } else {
    eval_points_ = sample_interior(domain, 10000, kEvalSeed);
  }
  return eval_points_;
}

PdeProblem make_problem(const std::string& id, const std::map<std::string, double>& params) {
  if (id == "poisson1d_sweep") return sweep_problem(get_param(params, "kappa", 10.0));
  if (id == "koch_poisson")
    return koch_problem(static_cast<int>(get_param(params, "level", 5.0)),
                        get_param(params, "gamma", 15.0 * kPi));
  if (id == "wave1d") return wave_problem();
  if (id == "plate") return plate_problem();
  if (id == "highdim_poisson")
    return highdim_problem(static_cast<int>(get_param(params, "d", 5.0)));
  if (id == "lame") return lame_problem();
  if (id == "helmholtz_nl") return helmholtz_problem();
  fail(ErrorCode::invalid_argument, "unknown problem id: " + id);
}

PlateFields plate_postprocess(const Solution& solution, const PlateConstants& constants,
                              const Eigen::MatrixXd& points) {
  const double rigidity = constants.rigidity(), nu = constants.nu;
  const auto d = [&](std::vector<int> orders) {
    return solution.evaluate(0, points, MultiIndex(std::move(orders)));
  };
  const Eigen::VectorXd u20 = d({2, 0}), u02 = d({0, 2}), u11 = d({1, 1});
  const Eigen::VectorXd u30 = d({3, 0}), u12 = d({1, 2}), u21 = d({2, 1}), u03 = d({0, 3});
  PlateFields fields;
  fields.m_x1 = -rigidity * (u20 + nu * u02);
  fields.m_x2 = -rigidity * (u02 + nu * u20);
  fields.m_x1x2 = rigidity * (1 - nu) * u11;
  fields.q_x1 = -rigidity * (u30 + u12);
  fields.q_x2 = -rigidity * (u21 + u03);
  return fields;
}

PlateFields plate_analytic_fields(const PlateConstants& c, const Eigen::MatrixXd& points) {
  const double inv = 1 / (c.a * c.a) + 1 / (c.b * c.b);
  PlateFields fields;
  const Eigen::Index n = points.rows();
  fields.m_x1.resize(n);
  fields.m_x2.resize(n);
  fields.m_x1x2.resize(n);
  fields.q_x1.resize(n);
  fields.q_x2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sa = std::sin(kPi * points(i, 0) / c.a), ca = std::cos(kPi * points(i, 0) / c.a);
    const double sb = std::sin(kPi * points(i, 1) / c.b), cb = std::cos(kPi * points(i, 1) / c.b);
    fields.m_x1(i) = c.q0 / (kPi * kPi * inv * inv) * (1 / (c.a * c.a) + c.nu / (c.b * c.b)) * sa * sb;
    fields.m_x2(i) = c.q0 / (kPi * kPi * inv * inv) * (c.nu / (c.a * c.a) + 1 / (c.b * c.b)) * sa * sb;
    fields.m_x1x2(i) = c.q0 * (1 - c.nu) / (kPi * kPi * inv * inv * c.a * c.b) * ca * cb;
    fields.q_x1(i) = c.q0 / (kPi * c.a * inv) * ca * sb;
    fields.q_x2(i) = c.q0 / (kPi * c.b * inv) * sa * cb;
  }
  return fields;
}

std::pair<double, double> lame_traction_rhs(const Eigen::VectorXd& point,
                                            const Eigen::VectorXd& normal, double q1,
                                            double q2) {
  (void)point;
  require(std::abs(normal.norm() - 1.0) < 1e-9, ErrorCode::invalid_argument,
          "traction normal must be unit length");
  return {-q1 * normal(0) + q2 * normal(1), -q1 * normal(1) - q2 * normal(0)};
}

std::vector<double> field_errors(const PdeProblem& problem, const Solution& solution) {
  require(static_cast<int>(solution.networks.size()) == problem.num_fields(),
          ErrorCode::invalid_argument, "solution/problem field count mismatch");
  const Eigen::MatrixXd& points = problem.eval_points();
  std::vector<double> errors;
  for (int f = 0; f < problem.num_fields(); ++f) {
    Eigen::VectorXd truth(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) truth(i) = problem.analytic[f](points.row(i));
    errors.push_back(l2_relative_error(solution.evaluate(f, points, MultiIndex::zero(problem.domain.dimension)), truth));
  }
  return errors;
}

double fitness(const PdeProblem& problem, const Solution& solution) {
  double total = 0;
  for (double e : field_errors(problem, solution)) total += e;
  return total;
}

}  // namespace sopf
