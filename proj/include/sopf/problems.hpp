#ifndef SOPF_PROBLEMS_HPP
#define SOPF_PROBLEMS_HPP

#include <Eigen/Core>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sopf/assembly.hpp"
#include "sopf/geometry.hpp"

namespace sopf {

struct PlateConstants {
  double a = 2, b = 3, h = 0.01, E = 2.6e2, nu = 0.25, q0 = 1e-2;
  double rigidity() const { return E * h * h * h / (12 * (1 - nu * nu)); }
};

struct LameConstants {
  double E = 2.1, mu = 0.25, q1 = 30, q2 = 2, a = 1, b = 2;
  double A() const {
    return (1.0 / E) * q1 * (1 - mu * mu) * b * b / (b * b * (1 + mu) + a * a * (1 - mu));
  }
  double B() const { return (1.0 / E) * q2 * (1 + mu) * b * b / (a * a); }
};

/// Pointwise nonlinearity g(u) added to the linear operator rows.
struct NonlinearTerm {
  std::function<double(double)> g;
  std::function<double(double)> g_prime;
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// One boundary group: where to sample, which equations to enforce there, and
/// which hyperparameters carry its point count and penalty weight.
struct BoundaryGroupSpec {
  std::string label;
  std::string subset;  // geometry subset selector
  std::string count_param;
  std::string lambda_param;
  std::vector<std::pair<OperatorSpec, RhsFunction>> equations;
};

struct CollocationGroup {
  BoundaryGroup geom;
  double lambda = 1.0;
};

struct CollocationSet {
  Eigen::MatrixXd interior;
  std::vector<CollocationGroup> groups;
};

struct PdeProblem {
  std::string id;
  Domain domain;
  std::vector<std::string> field_names;
  std::vector<std::string> net_count_params;  // one per field: "N" or "Nu","Nv"
  std::vector<std::string> omega_params;      // one per field
  std::string interior_count_param = "N1";
  std::vector<std::pair<OperatorSpec, RhsFunction>> interior_equations;
  std::vector<BoundaryGroupSpec> boundary_groups;
  std::vector<ScalarField> analytic;  // one per field
  std::optional<NonlinearTerm> nonlinear;

  int num_fields() const { return static_cast<int>(field_names.size()); }
  std::vector<std::string> hyperparam_names() const;

  /// Fixed evaluation set: 100x100 bounding grid filtered by contains for 2D
  /// scalar box-like domains (1000 points in 1D), 10000 interior points with
  /// seed 1234 for koch/annulus/d>2.
  const Eigen::MatrixXd& eval_points() const;

private:
  mutable Eigen::MatrixXd eval_points_;
};

/// Benchmark ids: poisson1d_sweep, koch_poisson, wave1d, plate,
/// highdim_poisson, lame, helmholtz_nl.
PdeProblem make_problem(const std::string& id, const std::map<std::string, double>& params = {});

struct PlateFields {
  Eigen::VectorXd m_x1, m_x2, m_x1x2, q_x1, q_x2;
};

/// Bending/twisting moments and shear forces from a deflection solution.
PlateFields plate_postprocess(const Solution& solution, const PlateConstants& constants,
                              const Eigen::MatrixXd& points);

/// Closed-form fields of the analytic deflection, for reference comparisons.
PlateFields plate_analytic_fields(const PlateConstants& constants, const Eigen::MatrixXd& points);

/// Traction data on the outer Lame boundary.
std::pair<double, double> lame_traction_rhs(const Eigen::VectorXd& point,
                                            const Eigen::VectorXd& normal, double q1, double q2);

/// L2 relative error against the analytic solution on the evaluation set,
/// summed over fields.
double fitness(const PdeProblem& problem, const Solution& solution);
std::vector<double> field_errors(const PdeProblem& problem, const Solution& solution);

}  // namespace sopf

#endif
