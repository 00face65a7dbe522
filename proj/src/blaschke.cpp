#include "phasedisc/blaschke.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

BlaschkeProduct::BlaschkeProduct(Complex constant, std::vector<Complex> zeros)
    : constant_(constant), zeros_(std::move(zeros)) {
  if (std::abs(std::abs(constant_) - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "Blaschke constant must be unimodular");
  }
  for (const Complex a : zeros_) {
    if (!(std::abs(a) <= 1.0 - 1e-12)) {
      std::ostringstream msg;
      msg << "Blaschke zero " << a << " is not inside the disc (|a| <= 1 - 1e-12)";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
  }
}

Complex BlaschkeProduct::operator()(Complex z) const {
  Complex value = constant_;
  for (const Complex a : zeros_) {
    const Complex den = 1.0 - std::conj(a) * z;
    if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(z))) {
      std::ostringstream msg;
      msg << "Blaschke product evaluated at its pole " << z;
      throw Error(ErrorKind::EvaluationAtPole, msg.str());
    }
    value *= (z - a) / den;
  }
  return value;
}

BlaschkeProduct BlaschkeProduct::operator*(const BlaschkeProduct& other) const {
  std::vector<Complex> zeros = zeros_;
  zeros.insert(zeros.end(), other.zeros_.begin(), other.zeros_.end());
  Complex c = constant_ * other.constant_;
  return {c / std::abs(c), std::move(zeros)};
}

std::vector<Complex> points_of(const PointSet& set) {
  std::vector<Complex> out;
  if (const auto* grid = std::get_if<CircleGrid>(&set)) {
    if (grid->n_points < 1) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
    out.reserve(grid->n_points);
    for (int k = 0; k < grid->n_points; ++k) {
      out.push_back(point_on(grid->circle, grid->phase_offset + 2.0 * kPi * k / grid->n_points));
    }
  } else if (const auto* seg = std::get_if<LineSegmentGrid>(&set)) {
    if (seg->n_points < 1) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
    out.reserve(seg->n_points);
    if (seg->n_points == 1) {
      out.push_back(seg->first);
    } else {
      for (int k = 0; k < seg->n_points; ++k) {
        const double t = static_cast<double>(k) / (seg->n_points - 1);
        out.push_back(seg->first + t * (seg->last - seg->first));
      }
    }
  } else {
    for (const Complex z : std::get<ExplicitPoints>(set).points) {
      bool duplicate = false;
      for (const Complex w : out) {
        if (std::abs(z - w) <= 1e-12) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) out.push_back(z);
    }
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "explicit point set is empty");
  }
  return out;
}

ModulusSamples modulus_samples(const ComplexFunction& f, const PointSet& set) {
  ModulusSamples out;
  out.points = points_of(set);
  out.moduli.reserve(out.points.size());
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    try {
      out.moduli.push_back(std::abs(f(out.points[k])));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "evaluation failed at point index " << k << " (" << out.points[k]
          << "): " << e.what();
      throw Error(e.kind(), msg.str(), e.stage());
    }
  }
  return out;
}

Alignment align_constant(std::span<const Complex> fvals, std::span<const Complex> gvals) {
  if (fvals.size() != gvals.size() || fvals.empty()) {
    throw Error(ErrorKind::InvalidArgument, "alignment needs equal, nonzero sample counts");
  }
  Complex s{};
  double nf = 0.0, ng = 0.0;
  for (std::size_t k = 0; k < fvals.size(); ++k) {
    s += std::conj(gvals[k]) * fvals[k];
    nf += std::norm(fvals[k]);
    ng += std::norm(gvals[k]);
  }
  if (std::abs(s) <= 1e-14 * std::sqrt(nf * ng)) {
    throw Error(ErrorKind::DegenerateAlignment, "samples are orthogonal; no unimodular fit");
  }
  const Complex c = s / std::abs(s);
  double res = 0.0;
  for (std::size_t k = 0; k < fvals.size(); ++k) res += std::norm(fvals[k] - c * gvals[k]);
  return {c, std::sqrt(res)};
}

std::optional<Complex> equal_up_to_unimodular(const BlaschkeProduct& b1,
                                              const BlaschkeProduct& b2, double tol) {
  if (b1.degree() != b2.degree()) return std::nullopt;
  std::vector<Complex> pool = b2.zeros();
  for (const Complex a : b1.zeros()) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const double dist = std::abs(a - pool[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best_dist > tol) return std::nullopt;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return b1.constant() / b2.constant();
}

}  // namespace phasedisc
