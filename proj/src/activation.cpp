#include "sopf/activation.hpp"

#include <cmath>

#include "sopf/error.hpp"

namespace sopf {

ActivationKind activation_from_string(const std::string& name) {
  if (name == "sine" || name == "sin") return ActivationKind::sine;
  if (name == "sigmoid") return ActivationKind::sigmoid;
  if (name == "swish") return ActivationKind::swish;
  if (name == "tanh") return ActivationKind::tanh;
  fail(ErrorCode::invalid_argument, "unknown activation: " + name);
}

std::string to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::sine: return "sine";
    case ActivationKind::sigmoid: return "sigmoid";
    case ActivationKind::swish: return "swish";
    case ActivationKind::tanh: return "tanh";
  }
  return "?";
}

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// d^n/dz^n sigma(z) as a polynomial in s = sigma(z).
inline double sigmoid_derivative(int order, double z) {
  const double s = sigmoid(z);
  switch (order) {
    case 0: return s;
    case 1: return s * (1 - s);
    case 2: return s * (1 - s) * (1 - 2 * s);
    case 3: return s * (1 - s) * (6 * s * s - 6 * s + 1);
    default: return s * (1 - s) * (1 - 2 * s) * (12 * s * s - 12 * s + 1);
  }
}

}  // namespace

double activation_derivative(ActivationKind kind, int order, double z) {
  require(order >= 0 && order <= 4, ErrorCode::unsupported_order,
          "activation derivative order must be in 0..4");
  switch (kind) {
    case ActivationKind::sine:
      // derivatives cycle sin, cos, -sin, -cos
      switch (order % 4) {
        case 0: return std::sin(z);
        case 1: return std::cos(z);
        case 2: return -std::sin(z);
        default: return -std::cos(z);
      }
    case ActivationKind::sigmoid:
      return sigmoid_derivative(order, z);
    case ActivationKind::swish:
      // (z*sigma)^(n) = z*sigma^(n) + n*sigma^(n-1)
      if (order == 0) return z * sigmoid(z);
      return z * sigmoid_derivative(order, z) + order * sigmoid_derivative(order - 1, z);
    case ActivationKind::tanh: {
      const double t = std::tanh(z);
      const double u = 1 - t * t;
      switch (order) {
        case 0: return t;
        case 1: return u;
        case 2: return -2 * t * u;
        case 3: return 2 * u * (3 * t * t - 1);
        default: return -8 * t * u * (3 * t * t - 2);
      }
    }
  }
  fail(ErrorCode::invalid_argument, "bad activation kind");
}

}  // namespace sopf
