#include "phasedisc/rational.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void drop_exact_trailing_zeros(std::vector<Complex>& c) {
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  double m = 0.0;
  for (const Complex c : coeffs_) m = std::max(m, std::abs(c));
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= 1e-14 * m) coeffs_.pop_back();
  drop_exact_trailing_zeros(coeffs_);
}

Polynomial Polynomial::untrimmed(std::vector<Complex> coeffs) {
  Polynomial p;
  p.coeffs_ = std::move(coeffs);
  drop_exact_trailing_zeros(p.coeffs_);
  return p;
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (const Complex root : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - root * c[k];
    c[0] = -root * c[0];
  }
  return untrimmed(std::move(c));
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::magnitude_at(Complex z) const {
  const double az = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return untrimmed(std::move(d));
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::l1_norm() const {
  double s = 0.0;
  for (const Complex c : coeffs_) s += std::abs(c);
  return s;
}

Polynomial Polynomial::trimmed_below(double threshold) const {
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= threshold) c.pop_back();
  return untrimmed(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return untrimmed(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex{-1.0}; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  return untrimmed(convolve(coeffs_, o.coeffs_));
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& x : c) x *= s;
  return untrimmed(std::move(c));
}

std::vector<Complex> convolve(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.empty() || y.empty()) return {};
  std::vector<Complex> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Root finding

namespace {

struct HornerResult {
  Complex value;
  Complex derivative;
  double magnitude;
};

HornerResult horner(const std::vector<Complex>& c, Complex z) {
  Complex p{}, dp{};
  double mag = 0.0;
  const double az = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
    mag = mag * az + std::abs(*it);
  }
  return {p, dp, mag};
}

bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z, int max_iterations) {
  const std::size_t n = z.size();
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const HornerResult h = horner(c, z[i]);
      if (std::abs(h.value) <= 4.0 * kEps * h.magnitude) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const Complex ratio = h.value / h.derivative;
      Complex repulsion{};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) return true;
  }
  return std::all_of(done.begin(), done.end(), [](bool b) { return b; });
}

std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -monic[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

void newton_polish(const std::vector<Complex>& c, std::vector<Complex>& z) {
  for (Complex& root : z) {
    for (int k = 0; k < 3; ++k) {
      const HornerResult h = horner(c, root);
      if (h.derivative == Complex{} || std::abs(h.value) <= kEps * h.magnitude) break;
      const Complex next = root - h.value / h.derivative;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (std::abs(horner(c, next).value) >= std::abs(h.value)) break;
      root = next;
    }
  }
}

double worst_residual_ratio(const Polynomial& p, const std::vector<Complex>& roots) {
  const double norm = p.l1_norm();
  const int deg = p.degree();
  double worst = 0.0;
  for (const Complex root : roots) {
    const double bound = norm * std::pow(std::max(1.0, std::abs(root)), deg);
    worst = std::max(worst, std::abs(p(root)) / bound);
  }
  return worst;
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p, RootFinderOptions options) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "the zero polynomial has no finite root set");
  if (p.degree() == 0) return {};
  const int n = p.degree();
  std::vector<Complex> monic(p.coeffs());
  const Complex lead = monic.back();
  for (Complex& c : monic) c /= lead;

  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(monic[static_cast<std::size_t>(k)]));
  const double radius = 1.0 + bound;

  std::vector<Complex> roots(static_cast<std::size_t>(n));
  if (n == 1) {
    roots[0] = -monic[0];
  } else {
    for (int k = 0; k < n; ++k) {
      roots[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * kPi * k / n + 0.4);
    }
    const bool converged = aberth(monic, roots, options.max_iterations);
    if (!converged ||
        worst_residual_ratio(p, roots) > options.residual_factor) {
      roots = companion_roots(monic);
      newton_polish(monic, roots);
    }
  }

  const double worst = worst_residual_ratio(p, roots);
  if (!(worst <= options.residual_factor)) {
    std::ostringstream msg;
    msg << "root finder did not converge after " << options.max_iterations
        << " iterations; worst relative residual " << worst;
    throw Error(ErrorKind::NonConvergence, msg.str());
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<RootCluster> cluster_roots(std::span<const Complex> roots, double tol) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  // Union-find by repeated relabeling; n is small.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (label[i] != label[j] && std::abs(roots[i] - roots[j]) <= tol) {
          const std::size_t lo = std::min(label[i], label[j]);
          label[i] = label[j] = lo;
          changed = true;
        }
      }
    }
  }
  std::vector<RootCluster> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != i) continue;
    Complex sum{};
    int count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (label[j] == i) {
        sum += roots[j];
        ++count;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "rational function has a zero denominator");
  }
}

Complex RationalFunction::operator()(Complex z) const {
  const Complex q = den_(z);
  if (std::abs(q) <= 1e-14 * den_.magnitude_at(z)) {
    std::ostringstream msg;
    msg << "rational function evaluated at a pole z = " << z;
    throw Error(ErrorKind::EvaluationAtPole, msg.str());
  }
  return num_(z) / q;
}

ExtendedPoint RationalFunction::operator()(const ExtendedPoint& z) const {
  if (z.is_finite()) {
    const Complex q = den_(z.value);
    if (std::abs(q) <= 1e-14 * den_.magnitude_at(z.value)) return ExtendedPoint::infinity();
    return ExtendedPoint::finite(num_(z.value) / q);
  }
  if (num_.degree() < den_.degree()) return ExtendedPoint::finite(0.0);
  if (num_.degree() > den_.degree()) return ExtendedPoint::infinity();
  return ExtendedPoint::finite(num_.leading() / den_.leading());
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return {num_ * o.num_, den_ * o.den_};
}

Cancellation cancel_common_roots(const RationalFunction& f, double tol) {
  const Polynomial& num = f.numerator();
  const Polynomial& den = f.denominator();
  if (num.degree() < 1 || den.degree() < 1) return {f, {}};
  std::vector<Complex> zeros = poly_roots(num);
  std::vector<Complex> poles = poly_roots(den);
  std::vector<Complex> cancelled;
  for (auto zi = zeros.begin(); zi != zeros.end();) {
    auto best = poles.end();
    double best_dist = std::numeric_limits<double>::infinity();
    for (auto pi = poles.begin(); pi != poles.end(); ++pi) {
      const double dist = std::abs(*zi - *pi);
      if (dist < best_dist) {
        best_dist = dist;
        best = pi;
      }
    }
    if (best != poles.end() && best_dist <= tol * std::max(1.0, std::abs(*zi))) {
      cancelled.push_back(0.5 * (*zi + *best));
      poles.erase(best);
      zi = zeros.erase(zi);
    } else {
      ++zi;
    }
  }
  if (cancelled.empty()) return {f, {}};
  return {RationalFunction(Polynomial::from_roots(zeros, num.leading()),
                           Polynomial::from_roots(poles, den.leading())),
          std::move(cancelled)};
}

// ---------------------------------------------------------------------------
// Modulus products and the degree-bound polynomial

RationalFunction build_modulus_product(const BlaschkeProduct& b, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "r must lie in (0, 1)");
  const double r2 = r * r;
  std::vector<Complex> num{1.0};
  std::vector<Complex> den{1.0};
  for (const Complex a : b.zeros()) {
    if (a == Complex{}) {
      for (Complex& c : num) c *= r2;
      continue;
    }
    const Complex ac = std::conj(a);
    const std::vector<Complex> n1{-a, 1.0};
    const std::vector<Complex> n2{r2, -ac};
    const std::vector<Complex> d1{1.0, -ac};
    const std::vector<Complex> d2{-r2 * a, 1.0};
    num = convolve(convolve(num, n1), n2);
    den = convolve(convolve(den, d1), d2);
  }
  return {Polynomial::untrimmed(std::move(num)), Polynomial::untrimmed(std::move(den))};
}

ModulusEquation modulus_equation_poly(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                      double r) {
  const RationalFunction r1 = build_modulus_product(b1, r);
  const RationalFunction r2 = build_modulus_product(b2, r);
  const std::vector<Complex> p1q2 = convolve(r1.numerator().coeffs(), r2.denominator().coeffs());
  const std::vector<Complex> p2q1 = convolve(r2.numerator().coeffs(), r1.denominator().coeffs());

  const std::size_t top = static_cast<std::size_t>(2 * b1.degree() + 2 * b2.degree());
  std::vector<Complex> diff(top + 1);
  double scale = 0.0, scale2 = 0.0;
  for (std::size_t k = 0; k < p1q2.size(); ++k) {
    diff[k] += p1q2[k];
    scale = std::max(scale, std::abs(p1q2[k]));
  }
  for (std::size_t k = 0; k < p2q1.size(); ++k) {
    diff[k] -= p2q1[k];
    scale2 = std::max(scale2, std::abs(p2q1[k]));
  }

  ModulusEquation eq;
  eq.degree_bound = static_cast<int>(top) - 1;
  eq.scale = scale;
  eq.top_residual = std::abs(diff[top]) / std::max(scale, scale2);
  if (eq.top_residual > 1e-10) {
    std::ostringstream msg;
    msg << "leading coefficients of P1 Q2 and P2 Q1 do not cancel (relative residual "
        << eq.top_residual << ")";
    throw Error(ErrorKind::InternalCheckFailed, msg.str());
  }
  diff.pop_back();
  double dmax = 0.0;
  for (const Complex c : diff) dmax = std::max(dmax, std::abs(c));
  eq.identically_zero = dmax <= eq.zero_threshold * scale;
  // Coefficients at the cancellation-noise level carry no information.
  eq.d = Polynomial::untrimmed(std::move(diff)).trimmed_below(1e-14 * scale);
  return eq;
}

EqualityPoints equality_points_on_circle(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                         double r) {
  EqualityPoints out;
  out.equation = modulus_equation_poly(b1, b2, r);
  if (out.equation.identically_zero) {
    out.all_of_circle = true;
    return out;
  }
  if (out.equation.d.degree() < 1) return out;
  const std::vector<Complex> roots = poly_roots(out.equation.d);
  for (const RootCluster& c : cluster_roots(roots, 1e-8)) {
    if (std::abs(std::abs(c.center) - r) <= 1e-8) out.points.push_back(c.center);
  }
  return out;
}

}  // namespace phasedisc
