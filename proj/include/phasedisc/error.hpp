#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace phasedisc {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  // geometry
  PoleAtInput,
  CircleNotInsideDisc,
  IdenticalCircles,
  NotIntersecting,
  // blaschke
  EvaluationAtPole,
  DegenerateAlignment,
  // rational
  NonConvergence,
  // outer
  ZeroOnBoundary,
  EvaluationTooCloseToBoundary,
  // retrieval
  RankDeficient,
  ResidualTooLarge,
  PoleAmbiguity,
  DegreeCapExceeded,
  PointsNotOnCommonCircle,
  ModulusMismatchOnCircle,
  ZeroOnCircle,
  // constructions
  UEqualsV,
  // internal consistency checks that should never fire
  InternalCheckFailed,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds caused by malformed or out-of-domain input, as opposed to
/// numerical failures on well-formed input.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string stage = {})
      : std::runtime_error(message), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }

  /// Pipeline stage that raised the error; empty outside the retrieval
  /// pipeline.
  const std::string& stage() const { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace phasedisc
