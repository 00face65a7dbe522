#include "phasedisc/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

namespace {

constexpr double kDeterminantFloor = 1e-14;
constexpr double kPoleTolerance = 1e-15;
constexpr double kLineTolerance = 1e-13;

// 2x2 complex matrix in row-major order.
using Mat2 = std::array<Complex, 4>;

Mat2 multiply(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat2 adjoint(const Mat2& x) {
  return {std::conj(x[0]), std::conj(x[2]), std::conj(x[1]), std::conj(x[3])};
}

// Generalized circles as Hermitian forms
//   A |z|^2 + B conj(z) + conj(B) z + C = 0,  A, C real,
// stored as the matrix [[A, B], [conj(B), C]].
Mat2 hermitian_form(const GeneralizedCircle& gc) {
  if (const auto* c = std::get_if<Circle>(&gc)) {
    const Complex b = -c->center;
    const double cc = std::norm(c->center) - c->radius * c->radius;
    return {1.0, b, std::conj(b), cc};
  }
  const auto& l = std::get<Line>(gc);
  const Complex b = -kI * l.direction;
  const double cc = 2.0 * std::imag(std::conj(l.direction) * l.point);
  return {0.0, b, std::conj(b), cc};
}

GeneralizedCircle from_hermitian_form(const Mat2& h) {
  const double a = std::real(h[0]);
  const Complex b = h[1];
  const double c = std::real(h[3]);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (std::abs(a) <= kLineTolerance * scale) {
    const double nb = std::abs(b);
    return Line{-c * b / (2.0 * nb * nb), kI * b / nb};
  }
  const Complex center = -b / a;
  const double r2 = std::norm(b) / (a * a) - c / a;
  if (!(r2 > 0.0)) {
    throw Error(ErrorKind::InternalCheckFailed,
                "mapped circle has non-positive squared radius");
  }
  return Circle{center, std::sqrt(r2)};
}

}  // namespace

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) {
  const double scale =
      std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::InvalidArgument, "Moebius coefficients must be finite and not all zero");
  }
  a_ = a / scale;
  b_ = b / scale;
  c_ = c / scale;
  d_ = d / scale;
  if (std::abs(a_ * d_ - b_ * c_) <= kDeterminantFloor) {
    throw Error(ErrorKind::InvalidArgument, "Moebius map is singular (ad - bc = 0)");
  }
}

Complex MoebiusMap::apply(Complex z) const {
  const Complex den = c_ * z + d_;
  const double scale = std::abs(c_) * std::abs(z) + std::abs(d_);
  if (std::abs(den) <= kPoleTolerance * scale) {
    std::ostringstream msg;
    msg << "Moebius map has a pole at z = " << z;
    throw Error(ErrorKind::PoleAtInput, msg.str());
  }
  return (a_ * z + b_) / den;
}

ExtendedPoint MoebiusMap::apply(const ExtendedPoint& z) const {
  if (z.at_infinity) {
    if (c_ == Complex{}) return ExtendedPoint::infinity();
    return ExtendedPoint::finite(a_ / c_);
  }
  const Complex den = c_ * z.value + d_;
  const double scale = std::abs(c_) * std::abs(z.value) + std::abs(d_);
  if (std::abs(den) <= kPoleTolerance * scale) return ExtendedPoint::infinity();
  return ExtendedPoint::finite((a_ * z.value + b_) / den);
}

ExtendedPoint MoebiusMap::pole() const {
  if (c_ == Complex{}) return ExtendedPoint::infinity();
  return ExtendedPoint::finite(-d_ / c_);
}

MoebiusMap MoebiusMap::inverse() const { return {d_, -b_, -c_, a_}; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& inner) const {
  const Mat2 m = multiply({a_, b_, c_, d_},
                          {inner.a_, inner.b_, inner.c_, inner.d_});
  return {m[0], m[1], m[2], m[3]};
}

MoebiusMap disc_automorphism(Complex omega, Complex alpha) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "omega must be unimodular");
  }
  if (!(std::abs(alpha) < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must lie in the open unit disc");
  }
  return {-omega, omega * alpha, -std::conj(alpha), 1.0};
}

Circle make_circle(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) ||
      !std::isfinite(center.real()) || !std::isfinite(center.imag())) {
    throw Error(ErrorKind::InvalidArgument, "circle radius must be positive and finite");
  }
  return {center, radius};
}

Line make_line(Complex point, Complex direction) {
  const double n = std::abs(direction);
  if (!(n > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "line direction must be nonzero");
  }
  return {point, direction / n};
}

bool inside_unit_disc(const Circle& c) {
  return std::abs(c.center) + c.radius < 1.0;
}

Complex point_on(const Circle& c, double angle) {
  return c.center + std::polar(c.radius, angle);
}

double equation_residual(const GeneralizedCircle& gc, Complex z) {
  if (const auto* c = std::get_if<Circle>(&gc)) {
    return std::abs(z - c->center) - c->radius;
  }
  const auto& l = std::get<Line>(gc);
  return std::imag(std::conj(l.direction) * (z - l.point));
}

GeneralizedCircle map_circle(const MoebiusMap& m, const GeneralizedCircle& gc) {
  // w = m(z)  <=>  z ~ N w with N the adjugate of m; the form transforms by
  // congruence and the positive factor |det|^2 is irrelevant.
  const Mat2 n = {m.d(), -m.b(), -m.c(), m.a()};
  const Mat2 h = multiply(adjoint(n), multiply(hermitian_form(gc), n));
  return from_hermitian_form(h);
}

AutomorphismImage circle_as_automorphism_image(const Circle& c) {
  if (!inside_unit_disc(c)) {
    throw Error(ErrorKind::CircleNotInsideDisc, "circle is not contained in the open unit disc");
  }
  const double dist = std::abs(c.center);
  if (dist == 0.0) return {1.0, 0.0, c.radius};

  // Work on the real diameter through the center. With x1 < x2 the
  // intersections of C with that diameter, the real involution
  // (a - x) / (1 - a x) swaps x1 <-> r and x2 <-> -r exactly when
  //   s a^2 - 2 (1 + x1 x2) a + s = 0,   s = x1 + x2.
  const Complex dir = c.center / dist;
  const double x1 = dist - c.radius;
  const double x2 = dist + c.radius;
  const double s = x1 + x2;
  const double t = 1.0 + x1 * x2;
  const double a = s / (t + std::sqrt(t * t - s * s));
  const double r = (a - x1) / (1.0 - a * x1);
  return {1.0, a * dir, r};
}

std::string_view to_string(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::InternallyDisjoint: return "InternallyDisjoint";
    case ConfigKind::ExternallyDisjoint: return "ExternallyDisjoint";
    case ConfigKind::InternallyTangent: return "InternallyTangent";
    case ConfigKind::ExternallyTangent: return "ExternallyTangent";
    case ConfigKind::Intersecting: return "Intersecting";
  }
  return "Unknown";
}

namespace {

double angle_from_distance(double r1, double r2, double d) {
  const double cosine =
      std::abs(r1 * r1 + r2 * r2 - d * d) / (2.0 * r1 * r2);
  return std::acos(std::clamp(cosine, 0.0, 1.0));
}

}  // namespace

CircleConfig classify_pair(const Circle& c1, const Circle& c2) {
  if (!inside_unit_disc(c1) || !inside_unit_disc(c2)) {
    throw Error(ErrorKind::CircleNotInsideDisc, "both circles must lie inside the open unit disc");
  }
  const double r1 = c1.radius;
  const double r2 = c2.radius;
  const double d = std::abs(c1.center - c2.center);
  const double tol = 1e-12 * (r1 + r2);
  const double sum = r1 + r2;
  const double diff = std::abs(r1 - r2);

  if (d <= tol && diff <= tol) {
    throw Error(ErrorKind::IdenticalCircles, "the two circles coincide");
  }
  if (d > sum + tol) return {ConfigKind::ExternallyDisjoint, std::nullopt};
  if (std::abs(d - sum) <= tol) return {ConfigKind::ExternallyTangent, std::nullopt};
  if (std::abs(d - diff) <= tol) return {ConfigKind::InternallyTangent, std::nullopt};
  if (d < diff - tol) return {ConfigKind::InternallyDisjoint, std::nullopt};
  return {ConfigKind::Intersecting, angle_from_distance(r1, r2, d)};
}

double intersection_angle(const Circle& c1, const Circle& c2) {
  const CircleConfig config = classify_pair(c1, c2);
  if (config.kind != ConfigKind::Intersecting) {
    throw Error(ErrorKind::NotIntersecting,
                "circles do not intersect transversally (" +
                    std::string(to_string(config.kind)) + ")");
  }
  return *config.angle;
}

AngleClass classify_angle(double theta, AnglePolicy policy) {
  if (!(theta > 0.0) || theta > kPi * (1.0 + 1e-15)) {
    throw Error(ErrorKind::InvalidArgument, "angle must lie in (0, pi]");
  }
  const double x = theta / kPi;

  // Convergents h/k of the continued fraction of x.
  long h_prev = 1, h_prev2 = 0;
  long k_prev = 0, k_prev2 = 1;
  double rest = x;
  PresumedIrrational best{1, std::abs(x - std::round(x))};
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rest);
    const long ai = static_cast<long>(a);
    const long h = ai * h_prev + h_prev2;
    const long k = ai * k_prev + k_prev2;
    if (k > policy.max_denominator) break;
    const double residual = std::abs(x - static_cast<double>(h) / static_cast<double>(k));
    if (residual <= policy.tolerance) {
      return RationalMultipleOfPi{h, k, residual};
    }
    best = {k, residual};
    const double frac = rest - a;
    if (frac <= 0.0) break;
    rest = 1.0 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return best;
}

ExtendedPoint inverse_point(Complex z, const Circle& c) {
  const Complex offset = z - c.center;
  if (offset == Complex{}) return ExtendedPoint::infinity();
  return ExtendedPoint::finite(c.center + c.radius * c.radius / std::conj(offset));
}

}  // namespace phasedisc
