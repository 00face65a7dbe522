#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "phasedisc/complex.hpp"
#include "phasedisc/geometry.hpp"

namespace phasedisc {

/// Any function that can be sampled pointwise. Implementations signal poles
/// by throwing phasedisc::Error.
using ComplexFunction = std::function<Complex(Complex)>;

/// Finite Blaschke product  constant * prod (z - a) / (1 - conj(a) z).
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  /// Rejects non-unimodular constants and zeros with |a| > 1 - 1e-12.
  BlaschkeProduct(Complex constant, std::vector<Complex> zeros);

  static BlaschkeProduct constant_only(Complex constant) { return {constant, {}}; }

  Complex constant() const { return constant_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  /// Throws EvaluationAtPole at a reflected zero 1/conj(a).
  Complex operator()(Complex z) const;

  /// Multiset union of zeros, product of constants.
  BlaschkeProduct operator*(const BlaschkeProduct& other) const;

  BlaschkeProduct with_constant(Complex constant) const { return {constant, zeros_}; }

 private:
  Complex constant_{1.0};
  std::vector<Complex> zeros_;
};

struct CircleGrid {
  Circle circle;
  int n_points = 0;
  double phase_offset = 0.0;
};

/// n_points equally spaced points from first to last, endpoints included.
struct LineSegmentGrid {
  Complex first;
  Complex last;
  int n_points = 0;
};

struct ExplicitPoints {
  std::vector<Complex> points;
};

using PointSet = std::variant<CircleGrid, LineSegmentGrid, ExplicitPoints>;

/// Deterministic point order; explicit points are deduplicated at 1e-12
/// keeping first occurrences.
std::vector<Complex> points_of(const PointSet& set);

struct ModulusSamples {
  std::vector<Complex> points;
  std::vector<double> moduli;
};

/// Samples |F| on the set. Evaluation failures are rethrown with the index of
/// the offending point.
ModulusSamples modulus_samples(const ComplexFunction& f, const PointSet& set);

struct Alignment {
  Complex constant;   // unimodular c minimizing sum |f_k - c g_k|^2
  double residual;    // sqrt(sum |f_k - c g_k|^2)
};

/// Throws DegenerateAlignment when sum conj(g_k) f_k vanishes.
Alignment align_constant(std::span<const Complex> fvals, std::span<const Complex> gvals);

/// lambda with B1 = lambda B2 when the zero multisets agree within tol under
/// greedy nearest-pair matching. Approximate for tightly clustered zeros.
std::optional<Complex> equal_up_to_unimodular(const BlaschkeProduct& b1,
                                              const BlaschkeProduct& b2,
                                              double tol);

}  // namespace phasedisc
