#pragma once

// Independent reference computations used as expected values in the tests.
// None of these call into the library's numerical routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

inline C blaschke(C constant, const std::vector<C>& zeros, C z) {
  C v = constant;
  for (const C a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

/// Coefficients, lowest degree first, of leading * prod (z - r).
inline std::vector<C> expand(const std::vector<C>& roots, C leading = 1.0) {
  std::vector<C> c{leading};
  for (const C r : roots) {
    std::vector<C> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

inline C horner(const std::vector<C>& c, C z) {
  C v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

struct Circ {
  C center;
  double radius;
};

/// Circumcircle of three points; empty when they are collinear.
inline std::optional<Circ> circumcircle(C a, C b, C c) {
  const double d = 2.0 * (a.real() * (b.imag() - c.imag()) + b.real() * (c.imag() - a.imag()) +
                          c.real() * (a.imag() - b.imag()));
  if (std::abs(d) < 1e-14) return std::nullopt;
  const double a2 = std::norm(a), b2 = std::norm(b), c2 = std::norm(c);
  const C center{(a2 * (b.imag() - c.imag()) + b2 * (c.imag() - a.imag()) + c2 * (a.imag() - b.imag())) / d,
                 (a2 * (c.real() - b.real()) + b2 * (a.real() - c.real()) + c2 * (b.real() - a.real())) / d};
  return Circ{center, std::abs(a - center)};
}

/// Angle in (0, pi/2] between two circles at an intersection point, from
/// their tangent directions there.
inline std::optional<double> crossing_angle(C c1, double r1, C c2, double r2) {
  const double d = std::abs(c2 - c1);
  if (d >= r1 + r2 || d <= std::abs(r1 - r2)) return std::nullopt;
  const double along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
  const C u = (c2 - c1) / d;
  const C p = c1 + along * u + h * u * C(0.0, 1.0);
  const C t1 = (p - c1) * C(0.0, 1.0);
  const C t2 = (p - c2) * C(0.0, 1.0);
  const double cosang = std::abs((t1.real() * t2.real() + t1.imag() * t2.imag()) / (std::abs(t1) * std::abs(t2)));
  return std::acos(std::min(1.0, cosang));
}

/// Smallest |q theta/pi - p| over q <= qmax, returned as (p, q, err).
struct BestFraction {
  long p;
  long q;
  double err;
};

inline BestFraction best_fraction(double theta, long qmax) {
  BestFraction best{0, 1, 1e300};
  const double x = theta / pi;
  for (long q = 1; q <= qmax; ++q) {
    const long p = std::lround(x * static_cast<double>(q));
    const double err = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
    if (err < best.err - 1e-18) best = {p, q, err};
  }
  return best;
}

/// Count of sign changes of h on an equally spaced periodic grid.
template <class F>
int sign_changes(F h, int n) {
  int count = 0;
  double prev = h(0);
  for (int k = 1; k <= n; ++k) {
    const double cur = h(k % n);
    if ((prev < 0.0) != (cur < 0.0)) ++count;
    prev = cur;
  }
  return count;
}

template <class F>
double bisect(F h, double lo, double hi) {
  double flo = h(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = h(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Random zeros in |z| <= max_modulus with pairwise separation >= sep.
inline std::vector<C> random_zeros(std::mt19937_64& rng, int n, double max_modulus, double sep) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<C> out;
  while (static_cast<int>(out.size()) < n) {
    const C a = std::polar(max_modulus * std::sqrt(u(rng)), 2.0 * pi * u(rng));
    bool ok = true;
    for (const C b : out) ok = ok && std::abs(a - b) >= sep;
    if (ok) out.push_back(a);
  }
  return out;
}

inline C random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  return std::polar(1.0, u(rng));
}

inline C random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * pi * u(rng));
}

}  // namespace oracle
