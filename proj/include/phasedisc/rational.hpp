#pragma once

#include <span>
#include <vector>

#include "phasedisc/blaschke.hpp"
#include "phasedisc/complex.hpp"

namespace phasedisc {

/// Dense complex polynomial, coefficients in ascending degree order.
class Polynomial {
 public:
  /// The zero polynomial.
  Polynomial() = default;

  /// Trims highest-order coefficients with modulus <= 1e-14 max|coeff|.
  explicit Polynomial(std::vector<Complex> coeffs);

  /// Keeps every coefficient as given (only exact trailing zeros dropped).
  static Polynomial untrimmed(std::vector<Complex> coeffs);

  static Polynomial constant(Complex c) { return Polynomial(std::vector<Complex>{c}); }

  /// leading * prod (z - root).
  static Polynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const { return is_zero() ? Complex{} : coeffs_.back(); }

  Complex operator()(Complex z) const;
  /// sum |c_k| |z|^k, the natural scale for rounding error in p(z).
  double magnitude_at(Complex z) const;

  Polynomial derivative() const;
  double max_abs_coeff() const;
  double l1_norm() const;

  /// Drops highest-order coefficients with modulus <= threshold.
  Polynomial trimmed_below(double threshold) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Raw coefficient convolution with no trimming.
std::vector<Complex> convolve(std::span<const Complex> x, std::span<const Complex> y);

struct RootFinderOptions {
  int max_iterations = 200;
  double residual_factor = 1e-9;
};

/// All roots, repeated by multiplicity, sorted by (real, imag). Aberth-Ehrlich
/// iteration with a companion-matrix eigenvalue fallback. Throws
/// NonConvergence when the residual bound
///   |p(root)| <= 1e-9 ||p||_1 max(1, |root|)^deg
/// fails after both.
std::vector<Complex> poly_roots(const Polynomial& p, RootFinderOptions options = {});

struct RootCluster {
  Complex center;
  int multiplicity;
};

/// Single-linkage clustering of a root multiset at the given distance.
std::vector<RootCluster> cluster_roots(std::span<const Complex> roots, double tol = 1e-8);

class RationalFunction {
 public:
  RationalFunction() : RationalFunction(Polynomial::constant(0.0), Polynomial::constant(1.0)) {}
  RationalFunction(Polynomial numerator, Polynomial denominator);

  static RationalFunction constant(Complex c) {
    return {Polynomial::constant(c), Polynomial::constant(1.0)};
  }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  /// Throws EvaluationAtPole when the denominator vanishes at z.
  Complex operator()(Complex z) const;
  ExtendedPoint operator()(const ExtendedPoint& z) const;

  RationalFunction operator*(const RationalFunction& o) const;

 private:
  Polynomial num_;
  Polynomial den_;
};

struct Cancellation {
  RationalFunction reduced;
  std::vector<Complex> cancelled;  // every removed common root is reported
};

/// Removes numerator/denominator root pairs closer than tol max(1, |root|).
Cancellation cancel_common_roots(const RationalFunction& f, double tol = 1e-10);

/// The rational function that equals |B(z)|^2 on r T:
///   prod (z - a)(r^2 - conj(a) z) / ((1 - conj(a) z)(z - r^2 a)).
/// Zeros at the origin contribute the exact constant r^2 (their factor
/// z r^2 / z is cancelled symbolically).
RationalFunction build_modulus_product(const BlaschkeProduct& b, double r);

/// D = P1 Q2 - P2 Q1 for the modulus products of B1 and B2 on r T.
struct ModulusEquation {
  Polynomial d;                    // z^(2M+2N) coefficient removed
  int degree_bound = 0;            // 2M + 2N - 1
  double top_residual = 0.0;       // |[z^(2M+2N)] D| / scale before removal
  double scale = 0.0;              // max |coeff| of P1 Q2
  double zero_threshold = 1e-10;   // relative, for "identically zero"
  bool identically_zero = false;
};

/// Throws InternalCheckFailed when the leading coefficients of P1 Q2 and P2 Q1
/// fail to cancel to 1e-10 relative.
ModulusEquation modulus_equation_poly(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                      double r);

struct EqualityPoints {
  bool all_of_circle = false;      // D vanishes identically
  std::vector<Complex> points;     // distinct roots of D with ||z| - r| <= 1e-8
  ModulusEquation equation;
};

EqualityPoints equality_points_on_circle(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                         double r);

}  // namespace phasedisc
