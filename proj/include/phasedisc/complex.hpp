#pragma once

#include <complex>
#include <numbers>

namespace phasedisc {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// A point of the Riemann sphere. Circle inversion and Moebius maps
/// legitimately produce the point at infinity, so it is a value here and not
/// an error.
struct ExtendedPoint {
  Complex value{};
  bool at_infinity = false;

  static ExtendedPoint infinity() { return {Complex{}, true}; }
  static ExtendedPoint finite(Complex z) { return {z, false}; }

  bool is_finite() const { return !at_infinity; }
};

inline Complex unit(double angle) { return std::polar(1.0, angle); }

}  // namespace phasedisc
