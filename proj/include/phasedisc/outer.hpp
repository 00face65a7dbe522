#pragma once

#include <vector>

#include "phasedisc/blaschke.hpp"
#include "phasedisc/complex.hpp"

namespace phasedisc {

/// Positive boundary moduli m_k at t_k = phase + 2 pi k / n on the unit circle.
class BoundaryModulus {
 public:
  /// Requires n >= 16, n a power of two, every m_k > 1e-10 and finite.
  explicit BoundaryModulus(std::vector<double> values, double phase = 0.0);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double phase() const { return phase_; }
  double angle(int k) const;

 private:
  std::vector<double> values_;
  double phase_;
};

/// Samples |F| on the n-point grid of the unit circle. Throws ZeroOnBoundary
/// when the smallest sample is <= 1e-10.
BoundaryModulus boundary_modulus_of(const ComplexFunction& f, int n, double phase = 0.0);

/// Outer function with the given boundary modulus, evaluated by the
/// trapezoidal rule applied to the Schwarz integral
///   u(z) = exp( 1/(2 pi) int (e^{it} + z)/(e^{it} - z) log m(t) dt ).
/// The uniform trapezoid is spectrally accurate for smooth periodic log m.
class OuterFunction {
 public:
  explicit OuterFunction(BoundaryModulus boundary, double rho_max = 0.99);

  const BoundaryModulus& boundary() const { return boundary_; }
  double rho_max() const { return rho_max_; }

  /// Throws EvaluationTooCloseToBoundary for |z| > rho_max.
  Complex operator()(Complex z) const;

  /// exp(mean log m_k), real and positive.
  double value_at_zero() const;

  /// Returns a copy whose boundary modulus is scaled by s > 0.
  OuterFunction scaled(double s) const;

 private:
  BoundaryModulus boundary_;
  double rho_max_;
  std::vector<Complex> nodes_;
  std::vector<double> log_modulus_;
};

}  // namespace phasedisc
