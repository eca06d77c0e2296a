#include "sopf/feature_net.hpp"

#include <random>

#include "sopf/error.hpp"

namespace sopf {

int MultiIndex::total() const {
  int s = 0;
  for (int o : orders) {
    require(o >= 0, ErrorCode::invalid_argument, "multi-index orders must be non-negative");
    s += o;
  }
  return s;
}

FeatureNetwork::FeatureNetwork(int input_dim, int width, double omega,
                               ActivationKind activation, std::uint64_t seed)
    : input_dim_(input_dim),
      width_(width),
      omega_(omega),
      activation_(activation),
      seed_(seed) {
  require(input_dim >= 1, ErrorCode::invalid_argument, "input_dim must be >= 1");
  require(width >= 1, ErrorCode::invalid_argument, "width must be >= 1");
  require(omega > 0, ErrorCode::invalid_argument, "omega must be > 0");

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-omega, omega);
  weights_.resize(width, input_dim);
  for (int i = 0; i < width; ++i)
    for (int j = 0; j < input_dim; ++j) weights_(i, j) = dist(gen);
  biases_.resize(width);
  for (int i = 0; i < width; ++i) biases_(i) = dist(gen);
}

Eigen::MatrixXd FeatureNetwork::eval(const Eigen::MatrixXd& points) const {
  return eval_derivative(MultiIndex::zero(input_dim_), points);
}

Eigen::MatrixXd FeatureNetwork::eval_derivative(const MultiIndex& m,
                                                const Eigen::MatrixXd& points) const {
  require(points.cols() == input_dim_, ErrorCode::invalid_argument,
          "points column count must equal input_dim");
  require(m.dim() == input_dim_, ErrorCode::invalid_argument,
          "multi-index dimension must equal input_dim");
  const int total = m.total();
  require(total <= 4, ErrorCode::unsupported_order, "derivative order |m| must be <= 4");

  // z(p, i) = w_i . x_p + b_i
  Eigen::MatrixXd z = points * weights_.transpose();
  z.rowwise() += biases_.transpose();

  Eigen::VectorXd weight_factor = Eigen::VectorXd::Ones(width_);
  for (int j = 0; j < input_dim_; ++j)
    for (int r = 0; r < m.orders[j]; ++r)
      weight_factor.array() *= weights_.col(j).array();

  Eigen::MatrixXd out(points.rows(), width_);
  for (Eigen::Index i = 0; i < out.cols(); ++i)
    for (Eigen::Index p = 0; p < out.rows(); ++p)
      out(p, i) = weight_factor(i) * activation_derivative(activation_, total, z(p, i));
  return out;
}

}  // namespace sopf
