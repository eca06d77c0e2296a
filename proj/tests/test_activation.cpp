#include <cmath>

#include "doctest.h"
#include "sopf/activation.hpp"
#include "sopf/error.hpp"

using namespace sopf;

namespace {

double fd4(ActivationKind kind, int order, double z, double h) {
  // 4th-order central difference of the (order-1)-th derivative
  auto g = [&](double x) { return activation_derivative(kind, order - 1, x); };
  return (-g(z + 2 * h) + 8 * g(z + h) - 8 * g(z - h) + g(z - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("activation names round-trip") {
  for (auto kind : {ActivationKind::sine, ActivationKind::sigmoid, ActivationKind::swish,
                    ActivationKind::tanh})
    CHECK(activation_from_string(to_string(kind)) == kind);
  CHECK(activation_from_string("sin") == ActivationKind::sine);
  CHECK_THROWS_AS(activation_from_string("relu"), Error);
}

TEST_CASE("sine derivatives cycle with period 4") {
  for (double z : {-1.3, 0.0, 0.7, 2.9}) {
    CHECK(activation_derivative(ActivationKind::sine, 0, z) == doctest::Approx(std::sin(z)));
    CHECK(activation_derivative(ActivationKind::sine, 1, z) == doctest::Approx(std::cos(z)));
    CHECK(activation_derivative(ActivationKind::sine, 2, z) == doctest::Approx(-std::sin(z)));
    CHECK(activation_derivative(ActivationKind::sine, 3, z) == doctest::Approx(-std::cos(z)));
    CHECK(activation_derivative(ActivationKind::sine, 4, z) == doctest::Approx(std::sin(z)));
  }
}

TEST_CASE("known point values") {
  CHECK(activation_derivative(ActivationKind::sigmoid, 0, 0.0) == doctest::Approx(0.5));
  CHECK(activation_derivative(ActivationKind::sigmoid, 1, 0.0) == doctest::Approx(0.25));
  CHECK(activation_derivative(ActivationKind::sigmoid, 2, 0.0) == doctest::Approx(0.0));
  CHECK(activation_derivative(ActivationKind::tanh, 0, 0.0) == doctest::Approx(0.0));
  CHECK(activation_derivative(ActivationKind::tanh, 1, 0.0) == doctest::Approx(1.0));
  CHECK(activation_derivative(ActivationKind::swish, 0, 0.0) == doctest::Approx(0.0));
  CHECK(activation_derivative(ActivationKind::swish, 1, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("closed-form derivatives match finite differences") {
  for (auto kind : {ActivationKind::sine, ActivationKind::sigmoid, ActivationKind::swish,
                    ActivationKind::tanh}) {
    for (int order = 1; order <= 4; ++order) {
      for (double z : {-2.1, -0.4, 0.0, 0.3, 1.8}) {
        const double exact = activation_derivative(kind, order, z);
        const double approx = fd4(kind, order, z, 1e-3);
        CHECK(exact == doctest::Approx(approx).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("orders outside 0..4 are rejected") {
  CHECK_THROWS_AS(activation_derivative(ActivationKind::sine, 5, 0.0), Error);
  CHECK_THROWS_AS(activation_derivative(ActivationKind::tanh, -1, 0.0), Error);
}
