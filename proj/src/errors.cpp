#include "tropcorr/errors.hpp"

namespace tropcorr {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::BadLabel: return "BadLabel";
    case Errc::TrivialSplit: return "TrivialSplit";
    case Errc::IncompatibleSplits: return "IncompatibleSplits";
    case Errc::UnknownSplit: return "UnknownSplit";
    case Errc::MarkingMismatch: return "MarkingMismatch";
    case Errc::BadSubmarking: return "BadSubmarking";
    case Errc::SizeBound: return "SizeBound";
    case Errc::NegativeLength: return "NegativeLength";
    case Errc::KeyMismatch: return "KeyMismatch";
    case Errc::ConePointHasNoRay: return "ConePointHasNoRay";
    case Errc::BadPermutation: return "BadPermutation";
    case Errc::ProductNotIdentity: return "ProductNotIdentity";
    case Errc::NotTransitive: return "NotTransitive";
    case Errc::GenusNotZero: return "GenusNotZero";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::NotInjective: return "NotInjective";
    case Errc::NotPostcriticallyClosed: return "NotPostcriticallyClosed";
    case Errc::Overflow: return "Overflow";
    case Errc::BadGenerator: return "BadGenerator";
    case Errc::NotConsecutive: return "NotConsecutive";
    case Errc::TrivialBlock: return "TrivialBlock";
    case Errc::NotLaminar: return "NotLaminar";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::BalancingFailure: return "BalancingFailure";
    case Errc::LocalRHFailure: return "LocalRHFailure";
    case Errc::UnstableTree: return "UnstableTree";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::IrrationalEigenvalueUnsupported: return "IrrationalEigenvalueUnsupported";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace tropcorr
