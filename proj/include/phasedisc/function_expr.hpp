#pragma once

#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "phasedisc/blaschke.hpp"
#include "phasedisc/geometry.hpp"
#include "phasedisc/rational.hpp"

namespace phasedisc {

class FunctionExpr;

/// map(inner(z)).
struct MoebiusOf {
  MoebiusMap map;
  std::shared_ptr<const FunctionExpr> inner;
};

/// outer(pre(z)^k); pre(z) = infinity evaluates outer at infinity.
struct PowerComposite {
  int k = 1;
  RationalFunction outer;
  MoebiusMap pre = MoebiusMap::identity();
};

/// (i - exp(pi s)) / (i + exp(pi s)).
struct StripMap {};

struct ProductOf {
  std::vector<FunctionExpr> factors;
};

using FunctionNode =
    std::variant<BlaschkeProduct, RationalFunction, MoebiusOf, PowerComposite, StripMap, ProductOf>;

/// Declarative, serializable description of the functions used by the
/// constructions and the command-line tools. Immutable; copies share nodes.
class FunctionExpr {
 public:
  static constexpr int kMaxDepth = 8;

  static FunctionExpr blaschke(BlaschkeProduct b);
  static FunctionExpr rational(RationalFunction r);
  static FunctionExpr moebius_of(MoebiusMap m, FunctionExpr inner);
  static FunctionExpr power_composite(int k, RationalFunction outer,
                                      MoebiusMap pre = MoebiusMap::identity());
  static FunctionExpr strip();
  static FunctionExpr product(std::vector<FunctionExpr> factors);

  const FunctionNode& node() const { return *node_; }
  int depth() const { return depth_; }
  std::string_view type_name() const;

  /// Throws EvaluationAtPole at poles.
  Complex operator()(Complex z) const;
  ExtendedPoint evaluate(const ExtendedPoint& z) const;

  /// Adapter for the sampling and verification APIs.
  ComplexFunction as_function() const;

 private:
  explicit FunctionExpr(FunctionNode node);

  std::shared_ptr<const FunctionNode> node_;
  int depth_ = 1;
};

/// (i - exp(pi s)) / (i + exp(pi s)); infinity at s = i(-1/2 + 2n).
ExtendedPoint strip_map_eval(Complex s);

}  // namespace phasedisc
