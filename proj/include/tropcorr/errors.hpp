#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropcorr {

enum class Errc {
  // trees
  BadLabel,
  TrivialSplit,
  IncompatibleSplits,
  UnknownSplit,
  MarkingMismatch,
  BadSubmarking,
  SizeBound,
  // tropical moduli
  NegativeLength,
  KeyMismatch,
  ConePointHasNoRay,
  // monodromy
  BadPermutation,
  ProductNotIdentity,
  NotTransitive,
  GenusNotZero,
  DegreeTooSmall,
  NotInjective,
  NotPostcriticallyClosed,
  Overflow,
  BadGenerator,
  NotConsecutive,
  TrivialBlock,
  // pullback
  NotLaminar,
  // hurwitz
  NotHomomorphism,
  BalancingFailure,
  LocalRHFailure,
  UnstableTree,
  UnknownEdge,
  // spectral
  NotSquare,
  NegativeEntry,
  IrrationalEigenvalueUnsupported,
  // io
  ParseError,
  Internal,
};

std::string_view errc_name(Errc code);

/// Every failure in the library is reported as an `Error` carrying a code.
/// Callers that need to branch (the CLI maps codes to exit statuses) use
/// `code()`; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tropcorr
