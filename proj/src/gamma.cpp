#include "endoscopy_kit/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace ek {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Lanczos coefficients for g = 7, nine terms.
constexpr double kLanczos[] = {0.99999999999980993,     676.5203681218851,
                               -1259.1392167224028,     771.32342877765313,
                               -176.61502916214059,     12.507343278686905,
                               -0.13857109526572012,    9.9843695780195716e-6,
                               1.5056327351493116e-7};

} // namespace

std::complex<double> gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::domain_error("gamma pole at a non-positive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
    }
    constexpr int g = 7;
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (int i = 1; i < g + 2; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + 0.5 + static_cast<double>(g);
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double gamma(double x) { return gamma(std::complex<double>(x, 0.0)).real(); }

} // namespace ek
