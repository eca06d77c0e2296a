#include "sopf/fd.hpp"

#include <cmath>

#include "sopf/error.hpp"

namespace sopf {

double FdScheme::default_step(FdKind kind) {
  switch (kind) {
    case FdKind::central1: return 1.0e-10;
    case FdKind::central2: return 1.0e-5;
    case FdKind::mixed2: return 1.0e-5;
    case FdKind::fourth: return 3.0e-3;
    case FdKind::mixed22: return 3.0e-3;
  }
  fail(ErrorCode::invalid_argument, "bad fd kind");
}

namespace {

Eigen::VectorXi shifts(std::initializer_list<int> s) {
  Eigen::VectorXi v(static_cast<Eigen::Index>(s.size()));
  Eigen::Index i = 0;
  for (int x : s) v(i++) = x;
  return v;
}

}  // namespace

FdStencil fd_stencil(const FdScheme& scheme) {
  const double h = scheme.step;
  require(h > 0, ErrorCode::invalid_argument, "fd step must be positive");
  switch (scheme.kind) {
    case FdKind::central1:
      return {{{shifts({1}), 1.0}, {shifts({-1}), -1.0}}, 2 * h};
    case FdKind::central2:
      return {{{shifts({1}), 1.0}, {shifts({0}), -2.0}, {shifts({-1}), 1.0}}, h * h};
    case FdKind::mixed2:
      return {{{shifts({1, 1}), 1.0},
               {shifts({1, -1}), -1.0},
               {shifts({-1, 1}), -1.0},
               {shifts({-1, -1}), 1.0}},
              4 * h * h};
    case FdKind::fourth:
      return {{{shifts({2}), 1.0},
               {shifts({-2}), 1.0},
               {shifts({1}), -4.0},
               {shifts({-1}), -4.0},
               {shifts({0}), 6.0}},
              h * h * h * h};
    case FdKind::mixed22:
      return {{{shifts({1, 1}), 1.0},
               {shifts({-1, -1}), 1.0},
               {shifts({-1, 1}), 1.0},
               {shifts({1, -1}), 1.0},
               {shifts({1, 0}), -2.0},
               {shifts({-1, 0}), -2.0},
               {shifts({0, 1}), -2.0},
               {shifts({0, -1}), -2.0},
               {shifts({0, 0}), 4.0}},
              h * h * h * h};
  }
  fail(ErrorCode::invalid_argument, "bad fd kind");
}

Eigen::VectorXd fd_derivative(const PointField& field, const FdScheme& scheme,
                              const Eigen::MatrixXd& points, const std::vector<int>& axes) {
  const FdStencil stencil = fd_stencil(scheme);
  const int naxes = static_cast<int>(stencil.taps.front().first.size());
  require(static_cast<int>(axes.size()) == naxes, ErrorCode::invalid_argument,
          "scheme expects " + std::to_string(naxes) + " axis argument(s)");
  for (int a : axes)
    require(a >= 0 && a < points.cols(), ErrorCode::invalid_argument, "axis out of range");

  Eigen::VectorXd out(points.rows());
  Eigen::VectorXd x(points.cols());
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    double acc = 0;
    for (const auto& [shift, weight] : stencil.taps) {
      x = points.row(p);
      for (int a = 0; a < naxes; ++a) x(axes[a]) += shift(a) * scheme.step;
      acc += weight * field(x);
    }
    out(p) = acc / stencil.denom;
  }
  return out;
}

}  // namespace sopf
