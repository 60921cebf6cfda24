#include "liesphere/error.hpp"

namespace liesphere {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonAntisymmetricBlock: return "NonAntisymmetricBlock";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::ExpDivergence: return "ExpDivergence";
    case ErrorKind::RetractionFailure: return "RetractionFailure";
    case ErrorKind::GaugeConstraintViolation: return "GaugeConstraintViolation";
    case ErrorKind::InvalidUnitTangent: return "InvalidUnitTangent";
    case ErrorKind::InvalidPlane: return "InvalidPlane";
    case ErrorKind::InvalidCurve: return "InvalidCurve";
    case ErrorKind::LiftFailure: return "LiftFailure";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::Transversality: return "TRANSVERSALITY";
    case ErrorKind::Nondegeneracy: return "NONDEGENERACY";
    case ErrorKind::Orientation: return "ORIENTATION";
    case ErrorKind::Genericity: return "GENERICITY";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NotCongruent: return "NotCongruent";
    case ErrorKind::DegenerateKappa1: return "DegenerateKappa1";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::VariationLeavesGenericClass: return "VariationLeavesGenericClass";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_ladder_error(ErrorKind kind) {
  return kind == ErrorKind::Transversality || kind == ErrorKind::Nondegeneracy ||
         kind == ErrorKind::Orientation || kind == ErrorKind::Genericity;
}

}  // namespace liesphere
