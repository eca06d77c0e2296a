#include "sopf/assembly.hpp"

#include <lapacke.h>

#include <cmath>
#include <fstream>

#include "sopf/error.hpp"
#include "sopf/fd.hpp"

namespace sopf {

Coefficient constant_coeff(double value) {
  return [value](const Eigen::VectorXd&, const Eigen::VectorXd*) { return value; };
}

OperatorSpec OperatorSpec::identity(int dim, int field) {
  OperatorSpec spec;
  spec.terms.push_back({constant_coeff(1.0), MultiIndex::zero(dim), field, false});
  return spec;
}

OperatorSpec OperatorSpec::negative_laplacian(int dim, int field) {
  OperatorSpec spec;
  for (int j = 0; j < dim; ++j) {
    auto orders = std::vector<int>(dim, 0);
    orders[j] = 2;
    spec.terms.push_back({constant_coeff(-1.0), MultiIndex(std::move(orders)), field, false});
  }
  return spec;
}

namespace {

// Maps a multi-index onto one of the reference stencils.
std::pair<FdScheme, std::vector<int>> fd_scheme_for(const MultiIndex& m) {
  std::vector<int> active;
  for (int j = 0; j < m.dim(); ++j)
    if (m.orders[j] > 0) active.push_back(j);
  if (active.size() == 1) {
    const int o = m.orders[active[0]];
    if (o == 1) return {FdScheme::with_default_step(FdKind::central1), active};
    if (o == 2) return {FdScheme::with_default_step(FdKind::central2), active};
    if (o == 4) return {FdScheme::with_default_step(FdKind::fourth), active};
  } else if (active.size() == 2) {
    const int o0 = m.orders[active[0]], o1 = m.orders[active[1]];
    if (o0 == 1 && o1 == 1) return {FdScheme::with_default_step(FdKind::mixed2), active};
    if (o0 == 2 && o1 == 2) return {FdScheme::with_default_step(FdKind::mixed22), active};
  }
  fail(ErrorCode::unsupported_order, "no reference fd stencil for this multi-index");
}

Eigen::MatrixXd derivative_features(const FeatureNetwork& net, const MultiIndex& m,
                                    const Eigen::MatrixXd& points, DerivMethod method) {
  if (method == DerivMethod::analytic || m.total() == 0) return net.eval_derivative(m, points);
  const auto [scheme, axes] = fd_scheme_for(m);
  const FdStencil stencil = fd_stencil(scheme);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(points.rows(), net.width());
  Eigen::MatrixXd shifted = points;
  for (const auto& [shift, weight] : stencil.taps) {
    shifted = points;
    for (std::size_t a = 0; a < axes.size(); ++a)
      shifted.col(axes[a]).array() += shift(static_cast<Eigen::Index>(a)) * scheme.step;
    acc += weight * net.eval(shifted);
  }
  return acc / stencil.denom;
}

}  // namespace

Block assemble_block(const std::vector<FeatureNetwork>& nets, const OperatorSpec& spec,
                     const RhsFunction& rhs, const Eigen::MatrixXd& points,
                     const std::optional<Eigen::MatrixXd>& normals, DerivMethod method,
                     const std::string& label, double lambda) {
  require(!nets.empty() && !spec.terms.empty(), ErrorCode::invalid_argument,
          "assemble_block needs networks and terms");
  Eigen::Index cols = 0;
  std::vector<Eigen::Index> offsets;
  for (const auto& net : nets) {
    offsets.push_back(cols);
    cols += net.width();
  }

  Block block;
  block.label = label;
  block.lambda = lambda;
  block.matrix = Eigen::MatrixXd::Zero(points.rows(), cols);
  block.rhs.resize(points.rows());

  for (const auto& term : spec.terms) {
    require(term.field >= 0 && term.field < static_cast<int>(nets.size()),
            ErrorCode::invalid_argument, "operator term references unknown field");
    require(!term.uses_normal || normals.has_value(), ErrorCode::invalid_argument,
            "operator term requires boundary normals");
    const Eigen::MatrixXd features =
        derivative_features(nets[term.field], term.m, points, method);
    for (Eigen::Index p = 0; p < points.rows(); ++p) {
      const Eigen::VectorXd x = points.row(p);
      Eigen::VectorXd n;
      const Eigen::VectorXd* nptr = nullptr;
      if (normals.has_value()) {
        n = normals->row(p);
        nptr = &n;
      }
      block.matrix.block(p, offsets[term.field], 1, nets[term.field].width()) +=
          term.coeff(x, nptr) * features.row(p);
    }
  }
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    const Eigen::VectorXd x = points.row(p);
    Eigen::VectorXd n;
    const Eigen::VectorXd* nptr = nullptr;
    if (normals.has_value()) {
      n = normals->row(p);
      nptr = &n;
    }
    block.rhs(p) = rhs(x, nptr);
  }
  return block;
}

LinearSystem assemble_system(const std::vector<Block>& blocks) {
  require(!blocks.empty(), ErrorCode::invalid_argument, "no blocks");
  const Eigen::Index cols = blocks.front().matrix.cols();
  Eigen::Index rows = 0;
  for (const auto& block : blocks) {
    require(block.matrix.cols() == cols, ErrorCode::invalid_argument,
            "inconsistent block widths");
    require(block.matrix.rows() == block.rhs.size(), ErrorCode::invalid_argument,
            "block rhs length mismatch");
    rows += block.matrix.rows();
  }

  LinearSystem system;
  system.matrix.resize(rows, cols);
  system.rhs.resize(rows);
  Eigen::Index at = 0;
  for (const auto& block : blocks) {
    const Eigen::Index r = block.matrix.rows();
    system.matrix.middleRows(at, r) = block.lambda * block.matrix;
    system.rhs.segment(at, r) = block.lambda * block.rhs;
    system.block_index.push_back({block.label, at, at + r, block.lambda});
    at += r;
  }
  return system;
}

void LinearSystem::write_csv(const std::string& path) const {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io_error, "cannot open " + path);
  out.precision(17);
  out << "# rows=" << matrix.rows() << " cols=" << matrix.cols() << "\n";
  for (const auto& range : block_index)
    out << "# block " << range.label << " [" << range.row_begin << "," << range.row_end
        << ") lambda=" << range.lambda << "\n";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) out << matrix(i, j) << ",";
    out << rhs(i) << "\n";
  }
}

Solution solve_min_norm_lsq(const LinearSystem& system, std::vector<FeatureNetwork> nets) {
  const Eigen::Index rows = system.matrix.rows(), cols = system.matrix.cols();
  require(rows >= 1 && cols >= 1, ErrorCode::invalid_argument, "empty system");
  require(system.matrix.allFinite() && system.rhs.allFinite(), ErrorCode::invalid_argument,
          "non-finite entries in linear system");

  Eigen::MatrixXd a = system.matrix;  // overwritten by LAPACK
  const Eigen::Index ldb = std::max(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(ldb);
  b.head(rows) = system.rhs;

  Eigen::VectorXd singular_values(std::min(rows, cols));
  lapack_int rank = 0;
  const lapack_int info = LAPACKE_dgelsd(
      LAPACK_COL_MAJOR, static_cast<lapack_int>(rows), static_cast<lapack_int>(cols), 1,
      a.data(), static_cast<lapack_int>(rows), b.data(), static_cast<lapack_int>(ldb),
      singular_values.data(), 1e-14, &rank);
  require(info == 0, ErrorCode::invalid_argument,
          "dgelsd failed with info=" + std::to_string(info));

  Solution solution;
  solution.alpha = b.head(cols);
  solution.networks = std::move(nets);
  solution.residual_norm = (system.matrix * solution.alpha - system.rhs).norm();
  return solution;
}

Eigen::Index Solution::field_offset(int field) const {
  require(field >= 0 && field < static_cast<int>(networks.size()), ErrorCode::invalid_argument,
          "unknown field");
  Eigen::Index offset = 0;
  for (int f = 0; f < field; ++f) offset += networks[f].width();
  return offset;
}

Eigen::VectorXd Solution::evaluate(int field, const Eigen::MatrixXd& points,
                                   const MultiIndex& m) const {
  const Eigen::Index offset = field_offset(field);
  const auto& net = networks[field];
  return net.eval_derivative(m, points) * alpha.segment(offset, net.width());
}

Eigen::VectorXd evaluate_solution(const Solution& solution, int field,
                                  const Eigen::MatrixXd& points, const MultiIndex& m) {
  return solution.evaluate(field, points, m);
}

double l2_relative_error(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth) {
  require(predicted.size() == truth.size(), ErrorCode::invalid_argument,
          "length mismatch in error evaluation");
  const double denom = truth.norm();
  require(denom > 0, ErrorCode::degenerate_reference, "zero reference norm");
  return (predicted - truth).norm() / denom;
}

}  // namespace sopf
