#ifndef SOPF_ACTIVATION_HPP
#define SOPF_ACTIVATION_HPP

#include <string>

namespace sopf {

enum class ActivationKind { sine, sigmoid, swish, tanh };

ActivationKind activation_from_string(const std::string& name);
std::string to_string(ActivationKind kind);

/// Closed-form n-th derivative of the activation at z, 0 <= order <= 4.
/// Sigmoid/tanh derivatives are polynomials in sigma(z)/tanh(z); swish is
/// z*sigma(z) differentiated by the product rule.
double activation_derivative(ActivationKind kind, int order, double z);

}  // namespace sopf

#endif
