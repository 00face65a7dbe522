#include "phasedisc/retrieval.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

namespace {

bool centered_at_origin(const Circle& c) { return std::abs(c.center) <= 1e-12; }

void require_origin_circle(const ModulusData& data, std::string_view what) {
  if (!centered_at_origin(data.circle) || !(data.circle.radius > 0.0 && data.circle.radius < 1.0)) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " requires data on a circle r T with 0 < r < 1");
  }
}

double max_of(std::span<const double> v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, x);
  return m;
}

// Rethrows errors from a pipeline stage tagged with the stage name.
template <typename F>
auto run_stage(const char* stage, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.kind(), e.what(), stage);
  }
}

}  // namespace

ModulusData make_modulus_data(const Circle& circle, std::vector<Complex> points,
                              std::vector<double> moduli) {
  if (points.size() != moduli.size()) {
    throw Error(ErrorKind::InvalidArgument, "point and modulus counts differ");
  }
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "modulus data is empty");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (std::abs(equation_residual(circle, points[k])) > 1e-10) {
      std::ostringstream msg;
      msg << "sample " << k << " at " << points[k] << " is not on the circle";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
    if (!std::isfinite(moduli[k]) || moduli[k] < 0.0) {
      throw Error(ErrorKind::InvalidArgument,
                  "modulus at sample " + std::to_string(k) + " is negative or not finite");
    }
  }
  // Points on a circle are distinct iff their angles are; sort a copy.
  std::vector<double> angles(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) angles[k] = std::arg(points[k] - circle.center);
  std::sort(angles.begin(), angles.end());
  for (std::size_t k = 0; k + 1 < angles.size(); ++k) {
    if ((angles[k + 1] - angles[k]) * circle.radius <= 1e-12) {
      throw Error(ErrorKind::InvalidArgument, "modulus data contains repeated points");
    }
  }
  if (angles.size() > 1 &&
      (angles.front() + 2.0 * kPi - angles.back()) * circle.radius <= 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "modulus data contains repeated points");
  }
  return {circle, std::move(points), std::move(moduli)};
}

ModulusData sample_modulus(const ComplexFunction& f, const Circle& circle, int n, double phase) {
  ModulusSamples s = modulus_samples(f, CircleGrid{circle, n, phase});
  return make_modulus_data(circle, std::move(s.points), std::move(s.moduli));
}

// ---------------------------------------------------------------------------
// Rational fit of the modulus on r T

ModulusFit fit_modulus_rational(const ModulusData& data, int degree, double rank_ratio) {
  require_origin_circle(data, "rational modulus fit");
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "degree must be nonnegative");
  const int k_samples = static_cast<int>(data.points.size());
  const int width = 2 * degree + 1;
  if (k_samples < 2 * width) {
    throw Error(ErrorKind::InvalidArgument,
                "degree " + std::to_string(degree) + " fit needs at least " +
                    std::to_string(2 * width) + " samples");
  }
  const double r = data.circle.radius;

  double scale = 0.0;
  for (const double m : data.moduli) scale += m * m;
  scale /= k_samples;
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "modulus data is identically zero");

  Eigen::MatrixXcd a(k_samples, 2 * width);
  for (int k = 0; k < k_samples; ++k) {
    const Complex w = data.points[static_cast<std::size_t>(k)] / r;
    const double y = data.moduli[static_cast<std::size_t>(k)] *
                     data.moduli[static_cast<std::size_t>(k)] / scale;
    Complex power = 1.0;
    for (int j = 0; j < width; ++j) {
      a(k, j) = power;
      a(k, width + j) = -y * power;
      power *= w;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::VectorXcd v = svd.matrixV().col(2 * width - 1);

  // Trim in the well-scaled variable w = z / r before returning to z.
  std::vector<Complex> pw(static_cast<std::size_t>(width)), qw(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j) {
    pw[static_cast<std::size_t>(j)] = v(j);
    qw[static_cast<std::size_t>(j)] = v(width + j);
  }
  const double vmax = v.cwiseAbs().maxCoeff();
  const Polynomial pw_t = Polynomial::untrimmed(pw).trimmed_below(1e-13 * vmax);
  const Polynomial qw_t = Polynomial::untrimmed(qw).trimmed_below(1e-13 * vmax);
  if (qw_t.is_zero()) {
    throw Error(ErrorKind::ResidualTooLarge, "modulus fit produced a zero denominator");
  }

  double residual_num = 0.0, residual_den = 0.0;
  for (int k = 0; k < k_samples; ++k) {
    const Complex w = data.points[static_cast<std::size_t>(k)] / r;
    const double y = data.moduli[static_cast<std::size_t>(k)] *
                     data.moduli[static_cast<std::size_t>(k)] / scale;
    const Complex q = qw_t(w);
    residual_num += std::norm(pw_t(w) - y * q);
    residual_den += std::norm(y * q);
  }

  auto to_z = [r](const Polynomial& p, double factor) {
    std::vector<Complex> c = p.coeffs();
    double rp = 1.0;
    for (Complex& x : c) {
      x *= factor / rp;
      rp *= r;
    }
    return Polynomial::untrimmed(std::move(c));
  };
  Polynomial pz = to_z(pw_t, scale);
  Polynomial qz = to_z(qw_t, 1.0);
  const Complex lead = qz.leading();
  pz = pz * (1.0 / lead);
  qz = qz * (1.0 / lead);

  ModulusFit fit;
  fit.h = RationalFunction(std::move(pz), std::move(qz));
  fit.degree = degree;
  fit.residual = residual_den > 0.0 ? std::sqrt(residual_num / residual_den) : INFINITY;
  fit.singular_ratio = 2 * width >= 2 ? sigma(2 * width - 2) / sigma(0) : 1.0;
  fit.rank_deficient = fit.singular_ratio < rank_ratio;
  return fit;
}

BlaschkeRecovery recover_blaschke_on_circle(const ModulusData& data, int degree,
                                            const RetrievalConfig& config) {
  require_origin_circle(data, "Blaschke recovery");
  const double r = data.circle.radius;
  BlaschkeRecovery out;
  out.fit = fit_modulus_rational(data, degree, config.rank_ratio);

  const Polynomial& q = out.fit.h.denominator();
  std::vector<Complex> zeros;
  if (q.degree() >= 1) {
    for (const Complex p : poly_roots(q)) {
      const double m = std::abs(p);
      if (m >= r - config.pole_band && m <= 1.0 + config.pole_band) {
        std::ostringstream msg;
        msg << "pole " << p << " of the fitted modulus lies in the ambiguity band ["
            << r - config.pole_band << ", " << 1.0 + config.pole_band << "]";
        throw Error(ErrorKind::PoleAmbiguity, msg.str());
      }
      if (m >= r) continue;
      const Complex a = p / (r * r);
      if (std::abs(a) > 1.0 - 1e-12) {
        std::ostringstream msg;
        msg << "pole " << p << " implies a zero " << a
            << " outside the disc; data is not the modulus of an inner function";
        throw Error(ErrorKind::ResidualTooLarge, msg.str());
      }
      out.interior_poles.push_back(p);
      zeros.push_back(a);
    }
  }

  // A zero at the origin contributes the constant factor r^2 to H and no
  // pole; its multiplicity is read off the level of |B| on r T.
  const BlaschkeProduct partial(1.0, zeros);
  double log_ratio = 0.0;
  for (std::size_t k = 0; k < data.points.size(); ++k) {
    log_ratio += std::log(data.moduli[k] / std::abs(partial(data.points[k])));
  }
  log_ratio /= static_cast<double>(data.points.size());
  if (!std::isfinite(log_ratio)) {
    throw Error(ErrorKind::ResidualTooLarge,
                "modulus level on the inner circle is not finite; cannot fix zeros at the origin");
  }
  const double origin = log_ratio / std::log(r);
  out.origin_zeros = std::max(0, static_cast<int>(std::lround(origin)));
  zeros.insert(zeros.end(), static_cast<std::size_t>(out.origin_zeros), Complex{});
  out.blaschke = BlaschkeProduct(1.0, std::move(zeros));

  for (std::size_t k = 0; k < data.points.size(); ++k) {
    out.modulus_residual = std::max(
        out.modulus_residual, std::abs(std::abs(out.blaschke(data.points[k])) - data.moduli[k]));
  }
  if (!(out.modulus_residual <= config.residual_tol)) {
    std::ostringstream msg;
    msg << "recovered Blaschke product misfits the data by " << out.modulus_residual
        << " > " << config.residual_tol;
    throw Error(ErrorKind::ResidualTooLarge, msg.str());
  }
  return out;
}

DegreeEstimate estimate_degree(const ModulusData& data, const RetrievalConfig& config) {
  DegreeEstimate est;
  const int k_samples = static_cast<int>(data.points.size());
  // A degree counts as identified when its fit residual collapses to at most
  // kCollapse times that of the previous degree, as it does for an exact
  // rational modulus. A failed reconstruction there means the data is not the
  // modulus of a Blaschke product and the error propagates. Smoothly
  // converging fits (singular inner data) are not identified; the search
  // continues and ends in DegreeCapExceeded.
  constexpr double kCollapse = 1e-6;
  std::string last_reason;
  for (int n = 0; n <= config.degree_max; ++n) {
    if (k_samples < 4 * n + 2) break;
    const ModulusFit fit = fit_modulus_rational(data, n, config.rank_ratio);
    est.residuals.push_back(fit.residual);
    if (!(fit.residual <= config.residual_tol)) continue;
    const bool identified = n == 0 || fit.residual <= kCollapse * est.residuals[static_cast<std::size_t>(n - 1)];
    try {
      recover_blaschke_on_circle(data, n, config);
      est.degree = n;
      return est;
    } catch (const Error& e) {
      const bool rejectable =
          e.kind() == ErrorKind::PoleAmbiguity || e.kind() == ErrorKind::ResidualTooLarge;
      if (identified || !rejectable) throw;
      last_reason = e.what();
    }
  }
  std::ostringstream msg;
  msg << "no degree <= " << config.degree_max << " yields a Blaschke product matching the data within "
      << config.residual_tol << "; fit residuals:";
  for (const double r : est.residuals) msg << ' ' << r;
  if (!last_reason.empty()) msg << "; last attempt: " << last_reason;
  throw Error(ErrorKind::DegreeCapExceeded, msg.str());
}

// ---------------------------------------------------------------------------
// Two-circle pipeline

ForwardResiduals forward_residuals(const BlaschkeProduct& b, const OuterFunction& u,
                                   const ModulusData& data_T, const ModulusData& data_r) {
  ForwardResiduals out{0.0, 0.0};
  const double scale_T = max_of(data_T.moduli);
  for (std::size_t k = 0; k < data_T.points.size(); ++k) {
    const double model = std::abs(b(data_T.points[k])) * data_T.moduli[k];
    out.on_T = std::max(out.on_T, std::abs(model - data_T.moduli[k]) / scale_T);
  }
  const double scale_r = max_of(data_r.moduli);
  for (std::size_t k = 0; k < data_r.points.size(); ++k) {
    const double model = std::abs(b(data_r.points[k]) * u(data_r.points[k]));
    out.on_rT = std::max(out.on_rT, std::abs(model - data_r.moduli[k]) / scale_r);
  }
  return out;
}

RetrievalResult retrieve_two_circles(const ModulusData& data_T, const ModulusData& data_r,
                                     const RetrievalConfig& config) {
  run_stage("validate", [&] {
    if (!centered_at_origin(data_T.circle) || std::abs(data_T.circle.radius - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidArgument, "first data set must lie on the unit circle");
    }
    require_origin_circle(data_r, "two-circle retrieval");
    const double m = *std::min_element(data_r.moduli.begin(), data_r.moduli.end());
    if (m < 1e-8) {
      throw Error(ErrorKind::ZeroOnCircle,
                  "modulus on r T drops below 1e-8; divide out the finite Blaschke product "
                  "of zeros on r T before retrieval");
    }
    return 0;
  });

  const OuterFunction outer = run_stage("outer", [&] {
    const std::size_t n = data_T.points.size();
    const double phase = std::arg(data_T.points.front());
    for (std::size_t k = 0; k < n; ++k) {
      const Complex expected = unit(phase + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
      if (std::abs(data_T.points[k] - expected) > 1e-10) {
        throw Error(ErrorKind::InvalidArgument,
                    "unit-circle samples must form an ordered uniform grid (index " +
                        std::to_string(k) + ")");
      }
    }
    return OuterFunction(BoundaryModulus(data_T.moduli, phase), config.rho_max);
  });

  const auto [estimate, recovery] = run_stage("inner", [&] {
    std::vector<double> inner(data_r.moduli.size());
    for (std::size_t k = 0; k < inner.size(); ++k) {
      inner[k] = data_r.moduli[k] / std::abs(outer(data_r.points[k]));
    }
    const ModulusData inner_data{data_r.circle, data_r.points, std::move(inner)};
    DegreeEstimate est = estimate_degree(inner_data, config);
    BlaschkeRecovery rec = recover_blaschke_on_circle(inner_data, est.degree, config);
    return std::pair{std::move(est), std::move(rec)};
  });

  return run_stage("assemble", [&] {
    const ForwardResiduals res = forward_residuals(recovery.blaschke, outer, data_T, data_r);
    if (!(res.on_T <= config.residual_tol) || !(res.on_rT <= config.residual_tol)) {
      std::ostringstream msg;
      msg << "forward residuals " << res.on_T << " (T), " << res.on_rT
          << " (rT) exceed " << config.residual_tol;
      throw Error(ErrorKind::ResidualTooLarge, msg.str());
    }
    RetrievalCertificate cert;
    cert.r = data_r.circle.radius;
    cert.samples_T = static_cast<int>(data_T.points.size());
    cert.samples_r = static_cast<int>(data_r.points.size());
    cert.fit_degree = estimate.degree;
    cert.origin_zeros = recovery.origin_zeros;
    cert.fit_residuals = estimate.residuals;
    cert.singular_ratio = recovery.fit.singular_ratio;
    cert.rank_deficient = recovery.fit.rank_deficient;
    cert.interior_poles = recovery.interior_poles;
    cert.inner_residual = recovery.modulus_residual;
    cert.residual_tol = config.residual_tol;
    return RetrievalResult{recovery.blaschke, outer, res.on_T, res.on_rT,
                           recovery.blaschke.degree(), std::move(cert)};
  });
}

// ---------------------------------------------------------------------------
// Finite-point certificate

std::string_view to_string(CertificateVerdict v) {
  return v == CertificateVerdict::EqualOnCircle ? "EqualOnCircle" : "Inconclusive";
}

FinitePointCertificate certify_finite_points(const BlaschkeProduct& b1,
                                             const BlaschkeProduct& b2,
                                             std::span<const Complex> points, double tol) {
  const std::vector<Complex> distinct =
      points_of(ExplicitPoints{std::vector<Complex>(points.begin(), points.end())});
  const double r = std::abs(distinct.front());
  for (const Complex z : distinct) {
    if (std::abs(std::abs(z) - r) > 1e-10) {
      throw Error(ErrorKind::PointsNotOnCommonCircle,
                  "certification points do not lie on a common circle centered at 0");
    }
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorKind::PointsNotOnCommonCircle, "certification circle radius must lie in (0, 1)");
  }

  FinitePointCertificate cert;
  cert.r = r;
  cert.tol = tol;
  cert.points = static_cast<int>(distinct.size());
  cert.bound = 2 * b1.degree() + 2 * b2.degree() - 1;
  std::vector<Complex> v1, v2;
  for (const Complex z : distinct) {
    const Complex x = b1(z);
    const Complex y = b2(z);
    if (std::abs(std::abs(x) - std::abs(y)) <= tol) ++cert.agreeing_points;
    v1.push_back(x);
    v2.push_back(y);
  }

  const ModulusEquation eq = modulus_equation_poly(b1, b2, r);
  cert.polynomial_identically_zero = eq.identically_zero;
  cert.polynomial_max_coeff = eq.d.max_abs_coeff();
  cert.polynomial_scale = eq.scale;
  cert.zero_threshold = eq.zero_threshold;

  if (cert.agreeing_points > cert.bound && eq.identically_zero) {
    cert.verdict = CertificateVerdict::EqualOnCircle;
    cert.lambda = align_constant(v1, v2).constant;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Equal-modulus parametrization

namespace {

std::vector<Complex> roots_or_empty(const Polynomial& p) {
  if (p.degree() < 1) return {};
  return poly_roots(p);
}

void check_off_circle(std::span<const Complex> roots, double r, const char* what) {
  for (const Complex z : roots) {
    if (std::abs(std::abs(z) - r) <= 1e-8 * std::max(1.0, r)) {
      std::ostringstream msg;
      msg << what << ' ' << z << " lies on the circle |z| = " << r;
      throw Error(ErrorKind::ZeroOnCircle, msg.str());
    }
  }
}

}  // namespace

ParametrizedPair parametrize_pair(const RationalFunction& f, const RationalFunction& g, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "r must lie in (0, 1)");

  ParametrizedPair out;
  out.r = r;
  const Cancellation fc = cancel_common_roots(f);
  const Cancellation gc = cancel_common_roots(g);
  out.cancelled = fc.cancelled;
  out.cancelled.insert(out.cancelled.end(), gc.cancelled.begin(), gc.cancelled.end());

  const std::vector<Complex> f_zeros = roots_or_empty(fc.reduced.numerator());
  const std::vector<Complex> f_poles = roots_or_empty(fc.reduced.denominator());
  const std::vector<Complex> g_zeros = roots_or_empty(gc.reduced.numerator());
  const std::vector<Complex> g_poles = roots_or_empty(gc.reduced.denominator());
  check_off_circle(f_zeros, r, "zero of f");
  check_off_circle(f_poles, r, "pole of f");
  check_off_circle(g_zeros, r, "zero of g");
  check_off_circle(g_poles, r, "pole of g");
  if (fc.reduced.numerator().is_zero() || gc.reduced.numerator().is_zero()) {
    throw Error(ErrorKind::ZeroOnCircle, "f or g vanishes identically");
  }

  double dev = 0.0, scale = 0.0;
  for (int k = 0; k < 256; ++k) {
    const Complex z = std::polar(r, 2.0 * kPi * k / 256.0);
    const double a = std::abs(f(z));
    const double b = std::abs(g(z));
    dev = std::max(dev, std::abs(a - b));
    scale = std::max({scale, a, b});
  }
  if (dev > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "|f| and |g| differ on r T by " << dev << " (relative " << dev / scale << ")";
    throw Error(ErrorKind::ModulusMismatchOnCircle, msg.str());
  }

  // Zeros in the scaled variable w = z / r.
  auto inside = [r](std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    for (const auto* set : {&a, &b}) {
      for (const Complex z : *set) {
        if (std::abs(z) < r) out.push_back(z / r);
      }
    }
    return out;
  };
  std::vector<Complex> z1 = inside(g_zeros, f_poles);
  std::vector<Complex> z2 = inside(f_zeros, g_poles);
  for (auto it = z1.begin(); it != z1.end();) {
    auto match = std::find_if(z2.begin(), z2.end(),
                              [&](Complex w) { return std::abs(w - *it) <= 1e-8; });
    if (match != z2.end()) {
      z2.erase(match);
      it = z1.erase(it);
    } else {
      ++it;
    }
  }
  const BlaschkeProduct b1(1.0, std::move(z1));
  const BlaschkeProduct b2_free(1.0, std::move(z2));

  std::vector<Complex> lhs, rhs;
  for (int k = 0; k < 64; ++k) {
    const Complex z = std::polar(0.5 * r, 2.0 * kPi * (k + 0.5) / 64.0);
    lhs.push_back(b1(z / r) * f(z));
    rhs.push_back(b2_free(z / r) * g(z));
  }
  const Complex lambda = align_constant(lhs, rhs).constant;
  out.b1 = b1;
  out.b2 = b2_free.with_constant(lambda);

  double worst = 0.0, size = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    worst = std::max(worst, std::abs(lhs[k] - lambda * rhs[k]));
    size = std::max(size, std::abs(lhs[k]));
  }
  out.identity_residual = worst / size;
  if (!(out.identity_residual <= 1e-9)) {
    std::ostringstream msg;
    msg << "parametrization identity residual " << out.identity_residual << " exceeds 1e-9";
    throw Error(ErrorKind::InternalCheckFailed, msg.str());
  }
  return out;
}

EqualModulusReport verify_equal_modulus(const ComplexFunction& f, const ComplexFunction& g,
                                        const PointSet& set, double tol) {
  const ModulusSamples a = modulus_samples(f, set);
  const ModulusSamples b = modulus_samples(g, set);
  EqualModulusReport rep;
  rep.n_points = a.points.size();
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    const double d = std::abs(a.moduli[k] - b.moduli[k]);
    if (d > rep.max_deviation || k == 0) {
      rep.max_deviation = d;
      rep.worst_point = a.points[k];
      rep.worst_index = k;
    }
  }
  rep.within_tolerance = rep.max_deviation <= tol;
  return rep;
}

}  // namespace phasedisc
