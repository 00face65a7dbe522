// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "phasedisc/constructions.hpp"
#include "phasedisc/outer.hpp"
#include "phasedisc/retrieval.hpp"

using namespace phasedisc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// B(z / r) as a rational function of z.
RationalFunction scaled_blaschke(Complex constant, const std::vector<Complex>& zeros, double r) {
  std::vector<Complex> num{constant}, den{1.0};
  for (const Complex a : zeros) {
    num = convolve(num, std::vector<Complex>{-r * a, 1.0});
    den = convolve(den, std::vector<Complex>{r, -std::conj(a)});
  }
  return {Polynomial(num), Polynomial(den)};
}

Outcome roundtrip() {
  std::mt19937_64 rng(101);
  double worst_err = 0.0, worst_time = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = static_cast<int>(rng() % 6);
    const BlaschkeProduct b(1.0, oracle::random_zeros(rng, deg, 0.85, 0.05));
    std::vector<Complex> cs;
    for (int j = 0, n = static_cast<int>(rng() % 4); j < n; ++j) cs.push_back(oracle::random_in_disc(rng, 0.5));
    const auto f = [&](Complex z) {
      Complex v = b(z);
      for (const Complex c : cs) v *= 1.0 + c * z;
      return v;
    };
    const auto start = std::chrono::steady_clock::now();
    const RetrievalResult res =
        retrieve_two_circles(sample_modulus(f, Circle{0.0, 1.0}, 256), sample_modulus(f, Circle{0.0, 0.5}, 256));
    std::vector<Complex> fv, gv;
    for (int k = 0; k < 100; ++k) {
      const Complex z = oracle::random_in_disc(rng, 0.9);
      fv.push_back(f(z));
      gv.push_back(res(z));
    }
    const Alignment al = align_constant(fv, gv);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double err = 0.0;
    for (std::size_t k = 0; k < fv.size(); ++k) err = std::max(err, std::abs(fv[k] - al.constant * gv[k]));
    worst_err = std::max(worst_err, err);
    worst_time = std::max(worst_time, secs);
    if (err > 1e-6 || secs >= 1.0) ++failures;
  }
  return {failures == 0, fmt("100 roundtrips, max aligned error %.2e, slowest run %.3f s", worst_err, worst_time)};
}

Outcome degree_bound() {
  std::mt19937_64 rng(102);
  const double radii[] = {0.3, 0.5, 0.8};
  double worst_top = 0.0;
  int failures = 0, max_points = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
    const double r = radii[trial % 3];
    const BlaschkeProduct b1(oracle::random_unimodular(rng), oracle::random_zeros(rng, m, 0.9, 0.05));
    const BlaschkeProduct b2(oracle::random_unimodular(rng), oracle::random_zeros(rng, n, 0.9, 0.05));
    const int bound = 2 * m + 2 * n - 1;
    const EqualityPoints ep = equality_points_on_circle(b1, b2, r);
    const int grid_points = oracle::sign_changes(
        [&](int k) {
          const Complex z = std::polar(r, 2 * kPi * (k + 0.5) / 4096);
          return std::abs(b1(z)) - std::abs(b2(z));
        },
        4096);
    worst_top = std::max(worst_top, ep.equation.top_residual);
    max_points = std::max(max_points, grid_points);
    if (ep.equation.d.degree() > bound || ep.equation.top_residual > 1e-10 || ep.all_of_circle ||
        grid_points > bound || static_cast<int>(ep.points.size()) > bound) {
      ++failures;
    }
  }
  return {failures == 0, fmt("200 pairs, %d violations, max top residual %.2e, max equality points %d",
                             failures, worst_top, max_points)};
}

Outcome certificate() {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  const double radii[] = {0.3, 0.5, 0.8};
  int equal_hits = 0, false_hits = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const double r = radii[trial % 3];
    const BlaschkeProduct b1(oracle::random_unimodular(rng), oracle::random_zeros(rng, m, 0.9, 0.05));
    std::vector<Complex> pts;
    for (int k = 0; k < 4 * m; ++k) pts.push_back(std::polar(r, u(rng)));
    if (certify_finite_points(b1, b1.with_constant(oracle::random_unimodular(rng)), pts, 1e-10).verdict ==
        CertificateVerdict::EqualOnCircle) {
      ++equal_hits;
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
    const double r = radii[trial % 3];
    const BlaschkeProduct b1(oracle::random_unimodular(rng), oracle::random_zeros(rng, m, 0.9, 0.05));
    const BlaschkeProduct b2(oracle::random_unimodular(rng), oracle::random_zeros(rng, n, 0.9, 0.05));
    std::vector<Complex> pts = equality_points_on_circle(b1, b2, r).points;
    while (static_cast<int>(pts.size()) < 2 * m + 2 * n) pts.push_back(std::polar(r, u(rng)));
    if (certify_finite_points(b1, b2, pts, 1e-10).verdict == CertificateVerdict::EqualOnCircle) ++false_hits;
  }
  return {equal_hits == 50 && false_hits == 0,
          fmt("EqualOnCircle for %d/50 rotated copies, %d/200 distinct pairs", equal_hits, false_hits)};
}

Outcome counterexamples() {
  std::vector<CounterexamplePair> pairs;
  pairs.push_back(perpendicular_lines_pair());
  for (int k = 2; k <= 6; ++k) pairs.push_back(rational_angle_pair(k, 2.0, 3.0));
  pairs.push_back(finite_set_pair({0.5, Complex(-0.2, 0.4), Complex(0.1, -0.6)}, Complex(0.3, 0.1),
                                  BlaschkeProduct(1.0, {0.2, Complex(0.0, 0.5)}),
                                  BlaschkeProduct(1.0, {Complex(-0.4, 0.1)})));
  pairs.push_back(two_circle_right_angle_pair().pair);

  const FunctionExpr strip = FunctionExpr::strip();
  CounterexamplePair strip_pair{"strip_map", strip, FunctionExpr::rational(RationalFunction::constant(1.0)),
                                strip_unimodular_set(), {}, 0.0};
  strip_pair.witness = Complex(0.3, 0.5);
  strip_pair.witness_deviation = std::abs(std::abs(strip(strip_pair.witness)) - 1.0);
  pairs.push_back(strip_pair);

  std::ostringstream detail;
  bool pass = true;
  double worst = 0.0, weakest_witness = INFINITY;
  std::size_t fewest = SIZE_MAX;
  for (const CounterexamplePair& p : pairs) {
    for (const PointSet& s : p.equal_modulus_set) {
      const EqualModulusReport rep = verify_equal_modulus(p.f.as_function(), p.g.as_function(), s, 1e-11);
      // A finite set X is checked point by point; continuous sets need 500 samples.
      const bool finite = std::holds_alternative<ExplicitPoints>(s);
      worst = std::max(worst, rep.max_deviation);
      if (!finite) fewest = std::min(fewest, rep.n_points);
      if (!rep.within_tolerance || (!finite && rep.n_points < 500)) {
        pass = false;
        detail << ' ' << p.name << " off by " << rep.max_deviation << ';';
      }
    }
    weakest_witness = std::min(weakest_witness, p.witness_deviation);
    if (!(p.witness_deviation >= 1e-3)) {
      pass = false;
      detail << ' ' << p.name << " witness " << p.witness_deviation << ';';
    }
  }
  return {pass, fmt("%zu pairs, max set residual %.2e, min samples per curve %zu, min witness %.2e", pairs.size(),
                    worst, fewest, weakest_witness) +
                    detail.str()};
}

Outcome outer_quadrature() {
  const auto f = [](Complex z) { return 1.0 + z / 2.0; };
  std::mt19937_64 rng(105);
  const OuterFunction u1024(boundary_modulus_of(f, 1024));
  double err1024 = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Complex z = oracle::random_in_disc(rng, 0.9);
    err1024 = std::max(err1024, std::abs(u1024(z) - f(z)));
  }
  // The trapezoid error is largest, and cleanest to measure, on the outer ring.
  const OuterFunction u256(boundary_modulus_of(f, 256)), u512(boundary_modulus_of(f, 512));
  double e256 = 0.0, e512 = 0.0;
  for (int k = 0; k < 360; ++k) {
    const Complex z = std::polar(0.9, 2 * kPi * k / 360);
    e256 = std::max(e256, std::abs(u256(z) - f(z)));
    e512 = std::max(e512, std::abs(u512(z) - f(z)));
  }
  const double ratio = e256 / e512;
  return {err1024 <= 1e-8 && ratio >= 100.0,
          fmt("n = 1024 max error %.2e; |z| = 0.9 errors %.2e (n = 256) and %.2e (n = 512), ratio %.0f", err1024,
              e256, e512, ratio)};
}

Outcome inverse_points() {
  const InversePointsReport rep = inverse_points_demo();
  const double gap = std::abs(rep.modulus_on_c1 - rep.modulus_on_c2);
  return {rep.spread_on_c1 <= 1e-10 && rep.spread_on_c2 <= 1e-10 && gap > 1e-2,
          fmt("|q| = %.6f on C1 (spread %.1e), %.6f on C2 (spread %.1e), gap %.3f", rep.modulus_on_c1,
              rep.spread_on_c1, rep.modulus_on_c2, rep.spread_on_c2, gap)};
}

Outcome parametrization() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double r = 0.3 + 0.5 * u(rng);
    const auto z1 = oracle::random_zeros(rng, 1 + static_cast<int>(rng() % 3), 0.8, 0.05);
    const auto z2 = oracle::random_zeros(rng, 1 + static_cast<int>(rng() % 3), 0.8, 0.05);
    const RationalFunction h(Polynomial(oracle::expand(oracle::random_zeros(rng, 2, 0.2, 0.05))),
                             Polynomial::constant(1.0));
    const RationalFunction f = scaled_blaschke(oracle::random_unimodular(rng), z2, r) * h;
    const RationalFunction g = scaled_blaschke(oracle::random_unimodular(rng), z1, r) * h;
    const ParametrizedPair pp = parametrize_pair(f, g, r);
    worst = std::max(worst, pp.identity_residual);
    if (!(pp.identity_residual <= 1e-9)) ++failures;
  }
  return {failures == 0, fmt("50 pairs, max identity residual %.2e", worst)};
}

Outcome conformal_invariance() {
  const double s = 1.0 / (3.0 * std::sqrt(2.0));
  const std::pair<Circle, Circle> configs[] = {
      {Circle{0.0, 0.8}, Circle{0.0, 0.2}},
      {Circle{0.6, 0.2}, Circle{-0.6, 0.2}},
      {Circle{0.0, 0.8}, Circle{0.5, 0.3}},
      {Circle{0.3, 0.2}, Circle{-0.2, 0.3}},
      {Circle{s, 1.0 / 3.0}, Circle{-s, 1.0 / 3.0}},
  };
  const double right = *classify_pair(configs[4].first, configs[4].second).angle;

  std::mt19937_64 rng(108);
  int variant_breaks = 0;
  double worst_angle = 0.0;
  for (const auto& [c1, c2] : configs) {
    const CircleConfig base = classify_pair(c1, c2);
    for (int trial = 0; trial < 100; ++trial) {
      const MoebiusMap m = disc_automorphism(oracle::random_unimodular(rng), oracle::random_in_disc(rng, 0.6));
      const GeneralizedCircle g1 = map_circle(m, c1), g2 = map_circle(m, c2);
      const auto* m1 = std::get_if<Circle>(&g1);
      const auto* m2 = std::get_if<Circle>(&g2);
      if (!m1 || !m2) {
        ++variant_breaks;
        continue;
      }
      const CircleConfig img = classify_pair(*m1, *m2);
      if (img.kind != base.kind) ++variant_breaks;
      if (base.angle && img.angle) worst_angle = std::max(worst_angle, std::abs(*img.angle - *base.angle));
    }
  }
  const double right_err = std::abs(right - kPi / 2);
  return {variant_breaks == 0 && worst_angle <= 1e-9 && right_err <= 1e-12,
          fmt("500 images, %d variant changes, max angle drift %.2e, right-angle error %.2e", variant_breaks,
              worst_angle, right_err)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"phase-retrieval roundtrip", roundtrip},
      {"degree bound of the modulus equation", degree_bound},
      {"finite-point certificate", certificate},
      {"counterexample residuals", counterexamples},
      {"outer-factor quadrature", outer_quadrature},
      {"inverse-points non-example", inverse_points},
      {"parametrization identity", parametrization},
      {"classifier conformal invariance", conformal_invariance},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
