#ifndef SOPF_FD_HPP
#define SOPF_FD_HPP

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

namespace sopf {

enum class FdKind {
  central1,  // first derivative, two-point central
  central2,  // second derivative, three-point central
  mixed2,    // d2/dxdy, four-corner
  fourth,    // d4/dx4, five-point
  mixed22,   // d4/dx2dy2, nine-point
};

struct FdScheme {
  FdKind kind;
  double step;

  static double default_step(FdKind kind);
  static FdScheme with_default_step(FdKind kind) { return {kind, default_step(kind)}; }
};

using PointField = std::function<double(const Eigen::VectorXd&)>;

/// Stencil offsets (per point: coordinate shifts in units of step, one entry per
/// involved axis) and weights; the denominator power of step is implied by the kind.
struct FdStencil {
  std::vector<std::pair<Eigen::VectorXi, double>> taps;  // (shift over axes, weight)
  double denom;                                          // step power divisor
};

FdStencil fd_stencil(const FdScheme& scheme);

/// Apply the scheme to a scalar field at each row of points. axes holds one axis
/// for central1/central2/fourth and two axes for mixed2/mixed22.
Eigen::VectorXd fd_derivative(const PointField& field, const FdScheme& scheme,
                              const Eigen::MatrixXd& points, const std::vector<int>& axes);

}  // namespace sopf

#endif
