#pragma once

#include <stdexcept>
#include <string>

namespace jetmove {

enum class Errc {
  NegativeRadicand,
  NotAUnit,
  BadSeed,
  ZeroSeed,
  DuplicateCenter,
  ZeroPolynomial,
  Mismatch,
  DivisionByZero,
  ParseError,
  NotCurvilinear,
  NotOnEquator,
  MixedSurfaces,
  InvalidPoint,
  InvalidJet,
  DegreeMismatch,
  IdentityFails,
  RootInForbiddenRegion,
  DuplicatePoints,
  NotDistant,
  PreconditionFailed,
  OrderMismatch,
  CyclicReference,
  EnumerationExhausted,
  InvalidDescriptor,
  Internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace jetmove
