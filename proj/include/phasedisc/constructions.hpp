#pragma once

#include <string>
#include <vector>

#include "phasedisc/blaschke.hpp"
#include "phasedisc/function_expr.hpp"
#include "phasedisc/geometry.hpp"

namespace phasedisc {

/// Two functions with |f| = |g| on `equal_modulus_set` that are not unimodular
/// multiples of each other; `witness` is a point where the moduli differ.
struct CounterexamplePair {
  std::string name;
  FunctionExpr f;
  FunctionExpr g;
  std::vector<PointSet> equal_modulus_set;
  Complex witness;
  double witness_deviation = 0.0;
};

/// Grid search for the point of largest ||f| - |g|| over circles of radius
/// 0.3 ... 0.95 (64 angles each, offset off the axes).
void attach_witness(CounterexamplePair& pair);

/// (z^2 - 2i)/(z^2 + 2i) and (z^2 - 3i)/(z^2 + 3i), unimodular on [-1, 1] and
/// i[-1, 1]. Equal to rational_angle_pair(2, 2, 3).
CounterexamplePair perpendicular_lines_pair(int samples_per_line = 512);

/// (z^k - c i)/(z^k + c i) for c = c1, c2: unimodular on the k lines through 0
/// at angles m pi / k. Requires k >= 2 and distinct c1, c2 >= 1 so that both
/// functions are holomorphic on the disc.
CounterexamplePair rational_angle_pair(int k, double c1, double c2, int samples_per_line = 512);

/// psi_alpha o (B u) and psi_alpha o (B v) with B the Blaschke product whose
/// zero set is X: both inner, both equal to alpha on X. Throws UEqualsV when
/// u is a unimodular multiple of v.
CounterexamplePair finite_set_pair(std::vector<Complex> x, Complex alpha,
                                   const BlaschkeProduct& u, const BlaschkeProduct& v,
                                   int boundary_samples = 512);

struct RightAnglePair {
  CounterexamplePair pair;
  Circle c1;
  Circle c2;
  Complex a;                      // intersection points are +a and -a
  double base_angle = 0.0;        // direction of the image line of c1
  double image_angle_between = 0.0;
};

/// Circles of radius 1/3 centered at +-1/(3 sqrt 2) meet at a right angle at
/// +-a, a = i/(3 sqrt 2). With zeta = e^{-i phi} (z + a)/(z - a) sending c1
/// to the real axis and c2 to the imaginary axis,
///   f = N_{l1} D_{l2},  g = N_{l2} D_{l1},
///   N_c = (z - a)^2 (zeta^2 - c i),  D_c = (z - a)^2 (zeta^2 + c i),
/// so f / g = F_{l1}(zeta^2) / F_{l2}(zeta^2) with F_c = (w - ci)/(w + ci)
/// while f and g are polynomials.
RightAnglePair two_circle_right_angle_pair(double level1 = 2.0, double level2 = 3.0,
                                           int samples_per_circle = 512);

/// Lines Im s = 0 and Im s = 1 (real part in [-2, 2]) where the strip map is
/// unimodular.
std::vector<PointSet> strip_unimodular_set(int samples_per_line = 512);

struct InversePointsReport {
  Circle c1;
  Circle c2;
  Complex z_plus;
  Complex z_minus;
  Complex inverse_in_c1;     // reflection of z_plus in c1
  Complex inverse_in_c2;     // reflection of z_plus in c2
  double modulus_on_c1 = 0;  // mean |q| on c1
  double modulus_on_c2 = 0;
  double spread_on_c1 = 0;   // max - min of |q| on c1
  double spread_on_c2 = 0;
  double stddev_on_c1 = 0;
  double stddev_on_c2 = 0;
  int samples = 0;
};

/// q(z) = (z - sqrt8/5)/(z + sqrt8/5) on the circles |z -+ 3/5| = 1/5:
/// constant modulus on each, but different constants.
InversePointsReport inverse_points_demo(int samples = 256);

}  // namespace phasedisc
