#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liesphere {

enum class ErrorKind {
  NonAntisymmetricBlock,
  NotInAlgebra,
  NotInGroup,
  ExpDivergence,
  RetractionFailure,
  GaugeConstraintViolation,
  InvalidUnitTangent,
  InvalidPlane,
  InvalidCurve,
  LiftFailure,
  GridTooCoarse,
  Transversality,
  Nondegeneracy,
  Orientation,
  Genericity,
  InvalidSpec,
  NotCongruent,
  DegenerateKappa1,
  OutOfDomain,
  VariationLeavesGenericClass,
  InvalidParams,
  EigenFailure,
  InvalidInput,  // unreadable or malformed files
};

std::string_view to_string(ErrorKind kind);

// Ladder failures of the frame reduction, as opposed to bad input or numerics.
bool is_ladder_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace liesphere
