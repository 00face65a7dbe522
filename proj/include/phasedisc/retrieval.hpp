#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "phasedisc/blaschke.hpp"
#include "phasedisc/geometry.hpp"
#include "phasedisc/outer.hpp"
#include "phasedisc/rational.hpp"

namespace phasedisc {

/// Modulus samples on one circle. Every point lies on the circle within
/// 1e-10 and points are pairwise distinct at 1e-12.
struct ModulusData {
  Circle circle;
  std::vector<Complex> points;
  std::vector<double> moduli;
};

ModulusData make_modulus_data(const Circle& circle, std::vector<Complex> points,
                              std::vector<double> moduli);

/// n equally spaced samples of |F| on the circle, starting at angle phase.
ModulusData sample_modulus(const ComplexFunction& f, const Circle& circle, int n,
                           double phase = 0.0);

struct RetrievalConfig {
  int degree_max = 8;
  double residual_tol = 1e-7;
  double rank_ratio = 1e-8;
  // Not consulted by retrieve_two_circles: the outer factor is built on the
  // data_T grid, whose size is whatever the caller sampled.
  int outer_grid = 1024;
  double pole_band = 0.02;
  double rho_max = 0.99;

  int fit_points_min() const { return 4 * degree_max + 1; }
};

/// Least-squares fit of |f|^2 on r T by H = P / Q with deg P, deg Q <= 2N.
struct ModulusFit {
  RationalFunction h;
  int degree = 0;
  /// ||P - m^2 Q|| / ||m^2 Q|| over the samples.
  double residual = 0.0;
  /// Second-smallest over largest singular value of the design matrix.
  double singular_ratio = 1.0;
  /// singular_ratio < rank_ratio: the degree is overestimated.
  bool rank_deficient = false;
};

/// Minimum-singular-direction solution of the homogeneous system
/// P(z_k) - m_k^2 Q(z_k) = 0, solved in the variable z / r and normalized so
/// the leading kept coefficient of Q is 1. The data circle must be r T.
ModulusFit fit_modulus_rational(const ModulusData& data, int degree,
                                double rank_ratio = 1e-8);

struct BlaschkeRecovery {
  BlaschkeProduct blaschke;           // constant fixed to 1
  ModulusFit fit;
  std::vector<Complex> interior_poles;  // poles of H with |p| < r, i.e. r^2 a_i
  int origin_zeros = 0;               // zeros at 0 leave no pole in H
  double modulus_residual = 0.0;      // max_k ||B(z_k)| - m_k|
};

/// Recovers an inner rational function from |B| on r T up to a unimodular
/// constant. Throws PoleAmbiguity for poles with |p| in [r - band, 1 + band]
/// and ResidualTooLarge when the recovered product does not reproduce the
/// data within residual_tol.
BlaschkeRecovery recover_blaschke_on_circle(const ModulusData& data, int degree,
                                            const RetrievalConfig& config = {});

struct DegreeEstimate {
  int degree = 0;
  std::vector<double> residuals;  // fit residual for N = 0, 1, ..., degree
};

/// Smallest N <= degree_max whose fit residual is within residual_tol and
/// whose fit yields a Blaschke product reproducing the data. When the fit
/// residual collapses at N (<= 1e-6 times that of N - 1) the degree is taken
/// as identified and a failed reconstruction is rethrown (ResidualTooLarge,
/// PoleAmbiguity). Otherwise the search goes on; throws DegreeCapExceeded
/// when it runs out.
DegreeEstimate estimate_degree(const ModulusData& data, const RetrievalConfig& config = {});

struct RetrievalCertificate {
  double r = 0.0;
  int samples_T = 0;
  int samples_r = 0;
  int fit_degree = 0;
  int origin_zeros = 0;
  std::vector<double> fit_residuals;
  double singular_ratio = 1.0;
  bool rank_deficient = false;
  std::vector<Complex> interior_poles;
  double inner_residual = 0.0;
  double residual_tol = 0.0;
};

struct RetrievalResult {
  BlaschkeProduct blaschke;
  OuterFunction outer;
  double residual_T = 0.0;
  double residual_rT = 0.0;
  int degree_used = 0;
  RetrievalCertificate certificate;

  /// B(z) u(z); valid for |z| <= outer.rho_max().
  Complex operator()(Complex z) const { return blaschke(z) * outer(z); }
};

struct ForwardResiduals {
  double on_T;
  double on_rT;
};

/// Relative max-modulus misfit of a reconstruction on both data sets. On T
/// the outer factor's boundary modulus equals the data by construction, so
/// only the Blaschke factor contributes there.
ForwardResiduals forward_residuals(const BlaschkeProduct& b, const OuterFunction& u,
                                   const ModulusData& data_T, const ModulusData& data_r);

/// Reconstructs f = B u, up to a unimodular constant, from |f| on T and on
/// r T. Errors carry the name of the failing stage ("validate", "outer",
/// "inner" or "assemble").
RetrievalResult retrieve_two_circles(const ModulusData& data_T, const ModulusData& data_r,
                                     const RetrievalConfig& config = {});

enum class CertificateVerdict { EqualOnCircle, Inconclusive };

std::string_view to_string(CertificateVerdict v);

struct FinitePointCertificate {
  CertificateVerdict verdict = CertificateVerdict::Inconclusive;
  double r = 0.0;
  int points = 0;            // distinct points examined
  int agreeing_points = 0;   // ||B1| - |B2|| <= tol
  int bound = 0;             // 2M + 2N - 1
  double tol = 0.0;
  bool polynomial_identically_zero = false;
  double polynomial_max_coeff = 0.0;
  double polynomial_scale = 0.0;
  double zero_threshold = 0.0;
  std::optional<Complex> lambda;  // B1 = lambda B2 when EqualOnCircle
};

/// Finite-point uniqueness test: more than 2M + 2N - 1 agreeing points on r T,
/// confirmed by the modulus equation vanishing identically. Throws
/// PointsNotOnCommonCircle.
FinitePointCertificate certify_finite_points(const BlaschkeProduct& b1,
                                             const BlaschkeProduct& b2,
                                             std::span<const Complex> points, double tol);

/// B1(z / r) f(z) = B2(z / r) g(z).
struct ParametrizedPair {
  BlaschkeProduct b1;
  BlaschkeProduct b2;
  double r = 0.0;
  double identity_residual = 0.0;  // relative, on 64 points of (r/2) T
  std::vector<Complex> cancelled;  // common roots removed from f and g
};

/// Throws ModulusMismatchOnCircle when |f| != |g| on r T (256 samples, 1e-9
/// relative) and ZeroOnCircle for zeros or poles on r T.
ParametrizedPair parametrize_pair(const RationalFunction& f, const RationalFunction& g, double r);

struct EqualModulusReport {
  double max_deviation = 0.0;
  Complex worst_point;
  std::size_t worst_index = 0;
  std::size_t n_points = 0;
  bool within_tolerance = true;
};

EqualModulusReport verify_equal_modulus(const ComplexFunction& f, const ComplexFunction& g,
                                        const PointSet& set, double tol);

}  // namespace phasedisc
