#pragma once

#include <complex>

namespace ek {

/// Gamma function on the complex plane via the Lanczos approximation with
/// the reflection formula for Re z < 1/2. Accurate to at least twelve
/// significant digits on the strip needed here (Re z in [-1, 10],
/// |Im z| <= 1). Throws std::domain_error at the poles (the non-positive
/// integers).
std::complex<double> gamma(std::complex<double> z);

/// Convenience overload for real arguments.
double gamma(double x);

} // namespace ek
