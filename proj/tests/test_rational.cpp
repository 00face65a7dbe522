#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "phasedisc/rational.hpp"
#include "test_util.hpp"

using namespace phasedisc;

namespace {

// Each expected root is matched by a distinct computed root within tol.
bool same_roots(std::vector<Complex> got, const std::vector<Complex>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (const Complex w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](Complex x, Complex y) {
      return std::abs(x - w) < std::abs(y - w);
    });
    if (std::abs(*it - w) > tol) return false;
    got.erase(it);
  }
  return true;
}

std::vector<Complex> mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Single-factor modulus product, numerator and denominator, by hand.
std::pair<std::vector<Complex>, std::vector<Complex>> factor_pq(Complex a, double r) {
  const Complex ac = std::conj(a);
  return {mul({-a, 1.0}, {r * r, -ac}), mul({1.0, -ac}, {-r * r * a, 1.0})};
}

}  // namespace

TEST_CASE("polynomial basics") {
  const Polynomial p(std::vector<Complex>{1.0, 0.0, 1.0});
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(kI)) < 1e-15);
  CHECK(Polynomial(std::vector<Complex>{1.0, 1e-20}).degree() == 0);
  CHECK(Polynomial(std::vector<Complex>{}).degree() == -1);
  const Polynomial q = Polynomial::from_roots(std::vector<Complex>{0.3, Complex(0, 0.5)});
  const auto ref = oracle::expand({0.3, Complex(0, 0.5)});
  for (int k = 0; k <= 2; ++k) CHECK(std::abs(q.coeff(k) - ref[static_cast<std::size_t>(k)]) < 1e-15);
  CHECK(std::abs((p * q)(0.7) - p(0.7) * q(0.7)) < 1e-14);
  CHECK(std::abs((p - q)(0.7) - (p(0.7) - q(0.7))) < 1e-14);
  CHECK(std::abs(p.derivative()(0.7) - 1.4) < 1e-15);
}

TEST_CASE("poly_roots examples") {
  CHECK(same_roots(poly_roots(Polynomial(std::vector<Complex>{1.0, 0.0, 1.0})), {kI, -kI}, 1e-12));
  CHECK(same_roots(poly_roots(Polynomial(oracle::expand({0.3, Complex(0, 0.5)}))), {0.3, Complex(0, 0.5)},
                   1e-12));
  CHECK(poly_roots(Polynomial::constant(2.0)).empty());
  const auto roots = poly_roots(Polynomial(std::vector<Complex>{0.0, 0.0, 1.0}));
  CHECK(same_roots(roots, {0.0, 0.0}, 1e-7));
}

TEST_CASE("poly_roots recovers expanded well-separated roots") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial < 100 ? 8 : 1 + static_cast<int>(rng() % 10);
    const auto roots = oracle::random_zeros(rng, n, 1.5, 0.1);
    const Complex lead = oracle::random_in_disc(rng, 2.0) + 0.5;
    CHECK(same_roots(poly_roots(Polynomial(oracle::expand(roots, lead))), roots, 1e-8));
  }
}

TEST_CASE("cluster_roots and cancel_common_roots") {
  const auto clusters = cluster_roots(std::vector<Complex>{0.3, 0.3 + 1e-10, 0.5});
  REQUIRE(clusters.size() == 2);
  const RationalFunction f(Polynomial(oracle::expand({0.3, 0.5})), Polynomial(oracle::expand({0.3, -0.2})));
  const Cancellation c = cancel_common_roots(f);
  REQUIRE(c.cancelled.size() == 1);
  CHECK(std::abs(c.cancelled[0] - 0.3) < 1e-10);
  CHECK(c.reduced.numerator().degree() == 1);
  CHECK(c.reduced.denominator().degree() == 1);
  CHECK(std::abs(c.reduced(0.1) - f(0.1)) < 1e-12);
}

TEST_CASE("rational functions at poles and infinity") {
  const RationalFunction f(Polynomial(std::vector<Complex>{-2.0 * kI, 0.0, 1.0}),
                           Polynomial(std::vector<Complex>{2.0 * kI, 0.0, 1.0}));
  CHECK(std::abs(f(0.0) - Complex(-1.0)) < 1e-15);
  CHECK(std::abs(f(ExtendedPoint::infinity()).value - Complex(1.0)) < 1e-15);
  const Complex pole = std::sqrt(-2.0 * kI);
  CHECK_THROWS_KIND(f(pole), ErrorKind::EvaluationAtPole);
  const RationalFunction g(Polynomial(std::vector<Complex>{0.0, 0.0, 1.0}), Polynomial::constant(1.0));
  CHECK(!g(ExtendedPoint::infinity()).is_finite());
}

TEST_CASE("build_modulus_product") {
  for (const double r : {0.3, 0.5, 0.8}) {
    const RationalFunction r0 = build_modulus_product(BlaschkeProduct(1.0, {0.0}), r);
    CHECK(r0.numerator().degree() == 0);
    CHECK(r0.denominator().degree() == 0);
    CHECK(std::abs(r0(0.123) - Complex(r * r)) < 1e-15);
  }
  const Complex alpha{0.3, -0.2};
  const double r = 0.6;
  const auto [p, q] = factor_pq(alpha, r);
  const RationalFunction rf = build_modulus_product(BlaschkeProduct(1.0, {alpha}), r);
  for (const Complex z : {Complex(0.1, 0.2), Complex(-0.7, 0.4), Complex(2.0, 1.0)}) {
    CHECK(std::abs(rf(z) - oracle::horner(p, z) / oracle::horner(q, z)) < 1e-13);
  }

  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const double rr = 0.2 + 0.7 * std::uniform_real_distribution<double>(0, 1)(rng);
    const auto zs = oracle::random_zeros(rng, 3, 0.9, 0.0);
    const RationalFunction m = build_modulus_product(BlaschkeProduct(oracle::random_unimodular(rng), zs), rr);
    for (int k = 0; k < 64; ++k) {
      const Complex z = std::polar(rr, 2 * kPi * (k + 0.25) / 64);
      const Complex v = m(z);
      CHECK(std::abs(v - std::norm(oracle::blaschke(1.0, zs, z))) < 1e-12);
      CHECK(std::abs(v.imag()) < 1e-12);
    }
  }
}

TEST_CASE("modulus_equation_poly examples") {
  const BlaschkeProduct b1(1.0, {0.3, Complex(0.1, -0.4)});
  CHECK(modulus_equation_poly(b1, b1, 0.5).identically_zero);
  CHECK(modulus_equation_poly(b1, b1.with_constant(unit(0.7)), 0.5).identically_zero);

  // M = N = 1 against a hand expansion of P1 Q2 - P2 Q1.
  const double r = 0.5;
  const auto [p1, q1] = factor_pq(0.3, r);
  const auto [p2, q2] = factor_pq(0.5, r);
  const auto a = mul(p1, q2), b = mul(p2, q1);
  std::vector<Complex> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const ModulusEquation eq = modulus_equation_poly(BlaschkeProduct(1.0, {0.3}), BlaschkeProduct(1.0, {0.5}), r);
  CHECK(!eq.identically_zero);
  CHECK(eq.degree_bound == 3);
  CHECK(eq.d.degree() <= 3);
  CHECK(std::abs(d[4]) < 1e-15);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(eq.d.coeff(k) - d[static_cast<std::size_t>(k)]) < 1e-14);
}

TEST_CASE("degree bound and equality points over random pairs") {
  std::mt19937_64 rng(33);
  const double radii[] = {0.3, 0.5, 0.8};
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
    const double r = radii[trial % 3];
    const BlaschkeProduct b1(oracle::random_unimodular(rng), oracle::random_zeros(rng, m, 0.9, 0.05));
    const BlaschkeProduct b2(oracle::random_unimodular(rng), oracle::random_zeros(rng, n, 0.9, 0.05));
    const int bound = 2 * m + 2 * n - 1;
    const EqualityPoints ep = equality_points_on_circle(b1, b2, r);
    CHECK(ep.equation.degree_bound == bound);
    CHECK(ep.equation.d.degree() <= bound);
    CHECK(ep.equation.top_residual <= 1e-10);
    REQUIRE(!ep.all_of_circle);
    CHECK(static_cast<int>(ep.points.size()) <= bound);
    const int changes = oracle::sign_changes(
        [&](int k) {
          const Complex z = std::polar(r, 2 * kPi * (k + 0.5) / 4096);
          return std::abs(b1(z)) - std::abs(b2(z));
        },
        4096);
    CHECK(changes <= bound);
    for (const Complex z : ep.points) {
      CHECK(std::abs(std::abs(z) - r) <= 1e-8);
      CHECK(std::abs(std::abs(b1(z)) - std::abs(b2(z))) < 1e-7);
    }
  }
}

TEST_CASE("equality points examples") {
  {
    const BlaschkeProduct b1(1.0, {0.3}), b2(1.0, {0.5});
    const EqualityPoints ep = equality_points_on_circle(b1, b2, 0.5);
    CHECK(!ep.all_of_circle);
    CHECK(ep.points.size() <= 3);
    const int changes = oracle::sign_changes(
        [&](int k) {
          const Complex z = std::polar(0.5, 2 * kPi * (k + 0.5) / 4096);
          return std::abs(b1(z)) - std::abs(b2(z));
        },
        4096);
    CHECK(static_cast<int>(ep.points.size()) == changes);
  }
  CHECK(equality_points_on_circle(BlaschkeProduct(1.0, {0.3}), BlaschkeProduct(kI, {0.3}), 0.5).all_of_circle);
  {
    // |B1| = 0.6 on the circle; crossings of |b_{0.4}| with 0.6 by bisection.
    const BlaschkeProduct b1(1.0, {0.0}), b2(1.0, {0.4});
    const auto h = [&](double t) { return std::abs(b2(std::polar(0.6, t))) - 0.6; };
    std::vector<double> want;
    const int n = 2048;
    for (int k = 0; k < n; ++k) {
      const double t0 = -kPi + 2 * kPi * k / n, t1 = -kPi + 2 * kPi * (k + 1) / n;
      if ((h(t0) < 0) != (h(t1) < 0)) want.push_back(oracle::bisect(h, t0, t1));
    }
    REQUIRE(want.size() == 2);
    const EqualityPoints ep = equality_points_on_circle(b1, b2, 0.6);
    REQUIRE(ep.points.size() == 2);
    for (const double t : want) {
      const Complex z = std::polar(0.6, t);
      CHECK(std::min(std::abs(ep.points[0] - z), std::abs(ep.points[1] - z)) < 1e-9);
    }
  }
}
