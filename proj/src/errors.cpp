#include "jetmove/errors.hpp"

namespace jetmove {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NegativeRadicand: return "NegativeRadicand";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::BadSeed: return "BadSeed";
    case Errc::ZeroSeed: return "ZeroSeed";
    case Errc::DuplicateCenter: return "DuplicateCenter";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::Mismatch: return "Mismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ParseError: return "ParseError";
    case Errc::NotCurvilinear: return "NotCurvilinear";
    case Errc::NotOnEquator: return "NotOnEquator";
    case Errc::MixedSurfaces: return "MixedSurfaces";
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::InvalidJet: return "InvalidJet";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::IdentityFails: return "IdentityFails";
    case Errc::RootInForbiddenRegion: return "RootInForbiddenRegion";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::NotDistant: return "NotDistant";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::CyclicReference: return "CyclicReference";
    case Errc::EnumerationExhausted: return "EnumerationExhausted";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace jetmove
