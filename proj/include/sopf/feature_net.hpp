#ifndef SOPF_FEATURE_NET_HPP
#define SOPF_FEATURE_NET_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "sopf/activation.hpp"

namespace sopf {

/// Partial-derivative order per input coordinate, total order <= 4.
struct MultiIndex {
  std::vector<int> orders;

  explicit MultiIndex(std::vector<int> o) : orders(std::move(o)) {}
  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(dim, 0)); }

  int total() const;
  int dim() const { return static_cast<int>(orders.size()); }
};

/// Single hidden layer with fixed random weights/biases drawn uniformly from
/// [-omega, omega]. Immutable after construction; reproducible from the seed
/// (draw order: all weights row-major, then all biases).
class FeatureNetwork {
public:
  FeatureNetwork(int input_dim, int width, double omega, ActivationKind activation,
                 std::uint64_t seed);

  int input_dim() const { return input_dim_; }
  int width() const { return width_; }
  double omega() const { return omega_; }
  ActivationKind activation() const { return activation_; }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& weights() const { return weights_; }  // width x input_dim
  const Eigen::VectorXd& biases() const { return biases_; }

  /// Feature matrix: entry (p, i) = rho(w_i . x_p + b_i). points is P x k.
  Eigen::MatrixXd eval(const Eigen::MatrixXd& points) const;

  /// Exact partial derivative of eval of multi-index order m:
  /// entry (p, i) = (prod_j w_ij^{m_j}) * rho^(|m|)(w_i . x_p + b_i).
  Eigen::MatrixXd eval_derivative(const MultiIndex& m, const Eigen::MatrixXd& points) const;

private:
  int input_dim_;
  int width_;
  double omega_;
  ActivationKind activation_;
  std::uint64_t seed_;
  Eigen::MatrixXd weights_;
  Eigen::VectorXd biases_;
};

inline FeatureNetwork init_network(int input_dim, int width, double omega,
                                   ActivationKind activation, std::uint64_t seed) {
  return FeatureNetwork(input_dim, width, omega, activation, seed);
}

inline Eigen::MatrixXd eval_features(const FeatureNetwork& net, const Eigen::MatrixXd& points) {
  return net.eval(points);
}

inline Eigen::MatrixXd eval_derivative_features(const FeatureNetwork& net, const MultiIndex& m,
                                                const Eigen::MatrixXd& points) {
  return net.eval_derivative(m, points);
}

}  // namespace sopf

#endif
