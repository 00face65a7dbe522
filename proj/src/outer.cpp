#include "phasedisc/outer.hpp"

#include <cmath>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

BoundaryModulus::BoundaryModulus(std::vector<double> values, double phase)
    : values_(std::move(values)), phase_(phase) {
  const std::size_t n = values_.size();
  if (n < 16 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "boundary grid size must be a power of two >= 16 (got " + std::to_string(n) + ")");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(values_[k])) {
      throw Error(ErrorKind::InvalidArgument, "boundary modulus is not finite at index " +
                                                  std::to_string(k));
    }
    if (!(values_[k] > 1e-10)) {
      std::ostringstream msg;
      msg << "boundary modulus " << values_[k] << " at index " << k
          << " is <= 1e-10; zeros on the unit circle must be divided out first";
      throw Error(ErrorKind::ZeroOnBoundary, msg.str());
    }
  }
}

double BoundaryModulus::angle(int k) const { return phase_ + 2.0 * kPi * k / size(); }

BoundaryModulus boundary_modulus_of(const ComplexFunction& f, int n, double phase) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "grid size must be positive");
  const ModulusSamples samples =
      modulus_samples(f, CircleGrid{Circle{0.0, 1.0}, n, phase});
  return BoundaryModulus(samples.moduli, phase);
}

OuterFunction::OuterFunction(BoundaryModulus boundary, double rho_max)
    : boundary_(std::move(boundary)), rho_max_(rho_max) {
  if (!(rho_max_ > 0.0 && rho_max_ < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "rho_max must lie in (0, 1)");
  }
  const int n = boundary_.size();
  nodes_.reserve(static_cast<std::size_t>(n));
  log_modulus_.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    nodes_.push_back(unit(boundary_.angle(k)));
    log_modulus_.push_back(std::log(boundary_.values()[static_cast<std::size_t>(k)]));
  }
}

Complex OuterFunction::operator()(Complex z) const {
  if (std::abs(z) > rho_max_) {
    std::ostringstream msg;
    msg << "outer function evaluated at |z| = " << std::abs(z) << " > rho_max = " << rho_max_;
    throw Error(ErrorKind::EvaluationTooCloseToBoundary, msg.str());
  }
  Complex acc{};
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    acc += (nodes_[k] + z) / (nodes_[k] - z) * log_modulus_[k];
  }
  return std::exp(acc / static_cast<double>(nodes_.size()));
}

double OuterFunction::value_at_zero() const {
  double acc = 0.0;
  for (const double l : log_modulus_) acc += l;
  return std::exp(acc / static_cast<double>(log_modulus_.size()));
}

OuterFunction OuterFunction::scaled(double s) const {
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
  std::vector<double> v = boundary_.values();
  for (double& x : v) x *= s;
  return OuterFunction(BoundaryModulus(std::move(v), boundary_.phase()), rho_max_);
}

}  // namespace phasedisc
