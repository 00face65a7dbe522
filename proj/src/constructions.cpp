#include "phasedisc/constructions.hpp"

#include <cmath>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

namespace {

// (w - c i) / (w + c i): maps the real axis onto the unit circle.
RationalFunction cayley_level(double c) {
  return {Polynomial(std::vector<Complex>{-c * kI, 1.0}),
          Polynomial(std::vector<Complex>{c * kI, 1.0})};
}

std::vector<PointSet> lines_through_origin(int k, int samples) {
  std::vector<PointSet> out;
  for (int m = 0; m < k; ++m) {
    const Complex dir = unit(kPi * m / k);
    out.emplace_back(LineSegmentGrid{-dir, dir, samples});
  }
  return out;
}

}  // namespace

void attach_witness(CounterexamplePair& pair) {
  pair.witness = {};
  pair.witness_deviation = -1.0;
  for (int ring = 0; ring <= 13; ++ring) {
    const double radius = 0.3 + 0.05 * ring;
    for (int j = 0; j < 64; ++j) {
      const Complex z = std::polar(radius, 2.0 * kPi * (j + 0.37) / 64.0);
      double dev = 0.0;
      try {
        dev = std::abs(std::abs(pair.f(z)) - std::abs(pair.g(z)));
      } catch (const Error&) {
        continue;
      }
      if (dev > pair.witness_deviation) {
        pair.witness_deviation = dev;
        pair.witness = z;
      }
    }
  }
}

CounterexamplePair perpendicular_lines_pair(int samples_per_line) {
  CounterexamplePair pair = rational_angle_pair(2, 2.0, 3.0, samples_per_line);
  pair.name = "perpendicular_lines";
  return pair;
}

CounterexamplePair rational_angle_pair(int k, double c1, double c2, int samples_per_line) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "k must be at least 2");
  if (c1 == c2) throw Error(ErrorKind::InvalidArgument, "c1 and c2 must differ");
  if (!(c1 >= 1.0) || !(c2 >= 1.0)) {
    // Poles sit at |z| = c^(1/k).
    throw Error(ErrorKind::InvalidArgument,
                "c1 and c2 must be >= 1, otherwise the functions have poles in the disc");
  }
  CounterexamplePair pair{"rational_angle_k" + std::to_string(k),
                          FunctionExpr::power_composite(k, cayley_level(c1)),
                          FunctionExpr::power_composite(k, cayley_level(c2)),
                          lines_through_origin(k, samples_per_line),
                          {},
                          0.0};
  attach_witness(pair);
  return pair;
}

CounterexamplePair finite_set_pair(std::vector<Complex> x, Complex alpha,
                                   const BlaschkeProduct& u, const BlaschkeProduct& v,
                                   int boundary_samples) {
  if (x.empty()) throw Error(ErrorKind::InvalidArgument, "finite set X is empty");
  if (equal_up_to_unimodular(u, v, 1e-9)) {
    throw Error(ErrorKind::UEqualsV, "u is a unimodular multiple of v; f and g would coincide");
  }
  const MoebiusMap psi = disc_automorphism(1.0, alpha);
  const BlaschkeProduct b(1.0, x);
  CounterexamplePair pair{"finite_set",
                          FunctionExpr::moebius_of(psi, FunctionExpr::blaschke(b * u)),
                          FunctionExpr::moebius_of(psi, FunctionExpr::blaschke(b * v)),
                          {CircleGrid{Circle{0.0, 1.0}, boundary_samples, 0.0},
                           ExplicitPoints{std::move(x)}},
                          {},
                          0.0};
  attach_witness(pair);
  return pair;
}

RightAnglePair two_circle_right_angle_pair(double level1, double level2, int samples_per_circle) {
  if (level1 == level2) throw Error(ErrorKind::InvalidArgument, "levels must differ");
  const double s = 1.0 / (3.0 * std::sqrt(2.0));
  RightAnglePair out{
      .pair = {"right_angle_circles", FunctionExpr::strip(), FunctionExpr::strip(), {}, {}, 0.0},
      .c1 = Circle{s, 1.0 / 3.0},
      .c2 = Circle{-s, 1.0 / 3.0},
      .a = Complex{0.0, s},
  };
  const Complex a = out.a;
  const MoebiusMap w(1.0, a, 1.0, -a);

  const GeneralizedCircle image1 = map_circle(w, out.c1);
  const GeneralizedCircle image2 = map_circle(w, out.c2);
  const Line* l1 = std::get_if<Line>(&image1);
  const Line* l2 = std::get_if<Line>(&image2);
  if (l1 == nullptr || l2 == nullptr) {
    throw Error(ErrorKind::InternalCheckFailed, "circles through the pole did not map to lines");
  }
  out.base_angle = std::arg(l1->direction);
  out.image_angle_between =
      std::acos(std::min(1.0, std::abs(std::real(l1->direction * std::conj(l2->direction)))));

  const Complex e = unit(-2.0 * out.base_angle);
  // (z - a)^2 (zeta^2 -+ c i) expanded in z.
  auto level_poly = [&](double c, double sign) {
    const Complex ci = sign * c * kI;
    return Polynomial(std::vector<Complex>{e * a * a - ci * a * a, 2.0 * e * a + 2.0 * ci * a,
                                           e - ci});
  };
  auto n = [&](double c) { return RationalFunction(level_poly(c, 1.0), Polynomial::constant(1.0)); };
  auto d = [&](double c) { return RationalFunction(level_poly(c, -1.0), Polynomial::constant(1.0)); };

  out.pair.f = FunctionExpr::product(
      {FunctionExpr::rational(n(level1)), FunctionExpr::rational(d(level2))});
  out.pair.g = FunctionExpr::product(
      {FunctionExpr::rational(n(level2)), FunctionExpr::rational(d(level1))});
  out.pair.equal_modulus_set = {CircleGrid{out.c1, samples_per_circle, 0.0},
                                CircleGrid{out.c2, samples_per_circle, 0.0}};
  attach_witness(out.pair);
  return out;
}

std::vector<PointSet> strip_unimodular_set(int samples_per_line) {
  return {LineSegmentGrid{Complex{-2.0, 0.0}, Complex{2.0, 0.0}, samples_per_line},
          LineSegmentGrid{Complex{-2.0, 1.0}, Complex{2.0, 1.0}, samples_per_line}};
}

InversePointsReport inverse_points_demo(int samples) {
  InversePointsReport rep;
  rep.c1 = Circle{0.6, 0.2};
  rep.c2 = Circle{-0.6, 0.2};
  rep.z_plus = std::sqrt(8.0) / 5.0;
  rep.z_minus = -rep.z_plus;
  rep.inverse_in_c1 = inverse_point(rep.z_plus, rep.c1).value;
  rep.inverse_in_c2 = inverse_point(rep.z_plus, rep.c2).value;
  rep.samples = samples;

  auto stats = [&](const Circle& c, double& mean, double& spread, double& stddev) {
    std::vector<double> v;
    for (const Complex z : points_of(CircleGrid{c, samples, 0.0})) {
      v.push_back(std::abs((z - rep.z_plus) / (z - rep.z_minus)));
    }
    double lo = v.front(), hi = v.front(), sum = 0.0;
    for (const double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      sum += x;
    }
    mean = sum / static_cast<double>(v.size());
    double var = 0.0;
    for (const double x : v) var += (x - mean) * (x - mean);
    stddev = std::sqrt(var / static_cast<double>(v.size()));
    spread = hi - lo;
  };
  stats(rep.c1, rep.modulus_on_c1, rep.spread_on_c1, rep.stddev_on_c1);
  stats(rep.c2, rep.modulus_on_c2, rep.spread_on_c2, rep.stddev_on_c2);
  return rep;
}

}  // namespace phasedisc
