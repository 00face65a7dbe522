#include "phasedisc/function_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ExtendedPoint times(const ExtendedPoint& x, const ExtendedPoint& y) {
  if (x.is_finite() && y.is_finite()) return ExtendedPoint::finite(x.value * y.value);
  // 0 * infinity has no value; report it as a pole of the product.
  return ExtendedPoint::infinity();
}

ExtendedPoint power(const ExtendedPoint& x, int k) {
  if (!x.is_finite()) return x;
  Complex acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= x.value;
  return ExtendedPoint::finite(acc);
}

}  // namespace

FunctionExpr::FunctionExpr(FunctionNode node)
    : node_(std::make_shared<const FunctionNode>(std::move(node))) {
  depth_ = std::visit(Overloaded{
                          [](const MoebiusOf& m) { return 1 + m.inner->depth(); },
                          [](const ProductOf& p) {
                            int d = 0;
                            for (const FunctionExpr& f : p.factors) d = std::max(d, f.depth());
                            return 1 + d;
                          },
                          [](const auto&) { return 1; },
                      },
                      *node_);
  if (depth_ > kMaxDepth) {
    throw Error(ErrorKind::InvalidArgument,
                "function expression nesting exceeds depth " + std::to_string(kMaxDepth));
  }
}

FunctionExpr FunctionExpr::blaschke(BlaschkeProduct b) { return FunctionExpr(std::move(b)); }

FunctionExpr FunctionExpr::rational(RationalFunction r) { return FunctionExpr(std::move(r)); }

FunctionExpr FunctionExpr::moebius_of(MoebiusMap m, FunctionExpr inner) {
  return FunctionExpr(MoebiusOf{m, std::make_shared<const FunctionExpr>(std::move(inner))});
}

FunctionExpr FunctionExpr::power_composite(int k, RationalFunction outer, MoebiusMap pre) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "power must be positive");
  return FunctionExpr(PowerComposite{k, std::move(outer), pre});
}

FunctionExpr FunctionExpr::strip() { return FunctionExpr(StripMap{}); }

FunctionExpr FunctionExpr::product(std::vector<FunctionExpr> factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "product needs at least one factor");
  return FunctionExpr(ProductOf{std::move(factors)});
}

std::string_view FunctionExpr::type_name() const {
  return std::visit(Overloaded{
                        [](const BlaschkeProduct&) { return std::string_view("blaschke"); },
                        [](const RationalFunction&) { return std::string_view("rational"); },
                        [](const MoebiusOf&) { return std::string_view("moebius_of"); },
                        [](const PowerComposite&) { return std::string_view("power_composite"); },
                        [](const StripMap&) { return std::string_view("strip"); },
                        [](const ProductOf&) { return std::string_view("product"); },
                    },
                    *node_);
}

ExtendedPoint FunctionExpr::evaluate(const ExtendedPoint& z) const {
  return std::visit(
      Overloaded{
          [&](const BlaschkeProduct& b) -> ExtendedPoint {
            if (!z.is_finite()) {
              // B(infinity) = constant * prod (-1 / conj(a)); infinite if a = 0.
              Complex v = b.constant();
              for (const Complex a : b.zeros()) {
                if (a == Complex{}) return ExtendedPoint::infinity();
                v *= -1.0 / std::conj(a);
              }
              return ExtendedPoint::finite(v);
            }
            try {
              return ExtendedPoint::finite(b(z.value));
            } catch (const Error& e) {
              if (e.kind() == ErrorKind::EvaluationAtPole) return ExtendedPoint::infinity();
              throw;
            }
          },
          [&](const RationalFunction& r) { return r(z); },
          [&](const MoebiusOf& m) { return m.map.apply(m.inner->evaluate(z)); },
          [&](const PowerComposite& p) { return p.outer(power(p.pre.apply(z), p.k)); },
          [&](const StripMap&) {
            if (!z.is_finite()) {
              throw Error(ErrorKind::EvaluationAtPole, "strip map is not defined at infinity");
            }
            return strip_map_eval(z.value);
          },
          [&](const ProductOf& p) {
            ExtendedPoint acc = ExtendedPoint::finite(1.0);
            for (const FunctionExpr& f : p.factors) acc = times(acc, f.evaluate(z));
            return acc;
          },
      },
      *node_);
}

Complex FunctionExpr::operator()(Complex z) const {
  const ExtendedPoint v = evaluate(ExtendedPoint::finite(z));
  if (!v.is_finite()) {
    std::ostringstream msg;
    msg << type_name() << " expression has a pole at z = " << z;
    throw Error(ErrorKind::EvaluationAtPole, msg.str());
  }
  return v.value;
}

ComplexFunction FunctionExpr::as_function() const {
  return [self = *this](Complex z) { return self(z); };
}

ExtendedPoint strip_map_eval(Complex s) {
  const Complex e = std::exp(kPi * s);
  const Complex den = kI + e;
  if (std::abs(den) <= 1e-14 * (1.0 + std::abs(e))) return ExtendedPoint::infinity();
  return ExtendedPoint::finite((kI - e) / den);
}

}  // namespace phasedisc
