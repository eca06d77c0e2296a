#ifndef SOPF_ASSEMBLY_HPP
#define SOPF_ASSEMBLY_HPP

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sopf/feature_net.hpp"

namespace sopf {

/// How operator rows obtain feature derivatives: the exact derivative network
/// or the reference finite-difference stencils.
enum class DerivMethod { analytic, fd };

/// Coefficient evaluated at a collocation point; normal is null away from
/// traction-style boundaries.
using Coefficient = std::function<double(const Eigen::VectorXd& x, const Eigen::VectorXd* normal)>;
/// Right-hand-side data at a collocation point.
using RhsFunction = std::function<double(const Eigen::VectorXd& x, const Eigen::VectorXd* normal)>;

Coefficient constant_coeff(double value);

struct OperatorTerm {
  Coefficient coeff;
  MultiIndex m;
  int field = 0;           // column block selector for multi-field problems
  bool uses_normal = false;
};

/// One scalar equation row: sum of coefficient * derivative terms.
struct OperatorSpec {
  std::vector<OperatorTerm> terms;

  static OperatorSpec identity(int dim, int field = 0);
  static OperatorSpec negative_laplacian(int dim, int field = 0);
};

struct Block {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::string label;
  double lambda = 1.0;
};

struct BlockRange {
  std::string label;
  Eigen::Index row_begin, row_end;
  double lambda;
};

/// Stacked weighted system; boundary blocks have matrix and rhs premultiplied
/// by their lambda.
struct LinearSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<BlockRange> block_index;

  void write_csv(const std::string& path) const;
};

struct Solution {
  Eigen::VectorXd alpha;
  std::vector<FeatureNetwork> networks;  // one per field
  double residual_norm = 0;

  Eigen::Index field_offset(int field) const;
  /// Derivative of field m evaluated at points: sum_i alpha_i * dphi_i.
  Eigen::VectorXd evaluate(int field, const Eigen::MatrixXd& points, const MultiIndex& m) const;
};

Block assemble_block(const std::vector<FeatureNetwork>& nets, const OperatorSpec& spec,
                     const RhsFunction& rhs, const Eigen::MatrixXd& points,
                     const std::optional<Eigen::MatrixXd>& normals,
                     DerivMethod method = DerivMethod::analytic,
                     const std::string& label = "", double lambda = 1.0);

LinearSystem assemble_system(const std::vector<Block>& blocks);

/// Minimum-norm least-squares solution via SVD with relative cutoff
/// 1e-14 * sigma_max; residual_norm is ||A a - b||_2.
Solution solve_min_norm_lsq(const LinearSystem& system, std::vector<FeatureNetwork> nets);

Eigen::VectorXd evaluate_solution(const Solution& solution, int field,
                                  const Eigen::MatrixXd& points, const MultiIndex& m);

double l2_relative_error(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth);

}  // namespace sopf

#endif
