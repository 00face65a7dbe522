#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "phasedisc/complex.hpp"

namespace phasedisc {

/// z -> (a z + b) / (c z + d), stored with the largest coefficient scaled to
/// modulus one.
class MoebiusMap {
 public:
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  /// Throws PoleAtInput when c z + d vanishes relative to the coefficient
  /// scale.
  Complex apply(Complex z) const;
  ExtendedPoint apply(const ExtendedPoint& z) const;

  /// The point sent to infinity, or infinity itself for affine maps.
  ExtendedPoint pole() const;

  MoebiusMap inverse() const;

  /// (this o inner)(z) = this(inner(z)).
  MoebiusMap compose(const MoebiusMap& inner) const;

 private:
  Complex a_, b_, c_, d_;
};

/// omega (alpha - z) / (1 - conj(alpha) z), a self-map of the open disc.
/// Requires |omega| = 1 within 1e-12 and |alpha| < 1.
MoebiusMap disc_automorphism(Complex omega, Complex alpha);

struct Circle {
  Complex center;
  double radius = 0.0;
};

struct Line {
  Complex point;
  Complex direction;  // unit modulus
};

using GeneralizedCircle = std::variant<Circle, Line>;

Circle make_circle(Complex center, double radius);
Line make_line(Complex point, Complex direction);

bool inside_unit_disc(const Circle& c);
Complex point_on(const Circle& c, double angle);

/// Signed residual of the defining equation: |z - c| - r for circles, the
/// distance to the line for lines.
double equation_residual(const GeneralizedCircle& gc, Complex z);

/// Image of a circle or line under a Moebius map. A circle through the pole
/// of the map becomes a line.
GeneralizedCircle map_circle(const MoebiusMap& m, const GeneralizedCircle& gc);

struct AutomorphismImage {
  Complex omega;
  Complex alpha;
  double r;
};

/// Finds (omega, alpha, r) with disc_automorphism(omega, alpha)(r T) = C.
/// alpha lies on the diameter through the center of C and omega = 1.
AutomorphismImage circle_as_automorphism_image(const Circle& c);

enum class ConfigKind {
  InternallyDisjoint,
  ExternallyDisjoint,
  InternallyTangent,
  ExternallyTangent,
  Intersecting,
};

std::string_view to_string(ConfigKind kind);

struct CircleConfig {
  ConfigKind kind;
  /// Angle in (0, pi/2] for Intersecting; unset otherwise.
  std::optional<double> angle;
};

/// Five-way classification of two distinct circles in the disc, with tie
/// tolerance 1e-12 (r1 + r2).
CircleConfig classify_pair(const Circle& c1, const Circle& c2);

/// Intersection angle folded into (0, pi/2]. Throws NotIntersecting.
double intersection_angle(const Circle& c1, const Circle& c2);

struct RationalMultipleOfPi {
  long p;
  long q;
  double residual;
};

struct PresumedIrrational {
  long best_q;
  double best_residual;
};

using AngleClass = std::variant<RationalMultipleOfPi, PresumedIrrational>;

struct AnglePolicy {
  long max_denominator = 64;
  double tolerance = 1e-9;
};

/// Decides whether theta / pi is rational by continued fractions.
AngleClass classify_angle(double theta, AnglePolicy policy = {});

/// Reflection of z in C; the center maps to infinity.
ExtendedPoint inverse_point(Complex z, const Circle& c);

}  // namespace phasedisc
