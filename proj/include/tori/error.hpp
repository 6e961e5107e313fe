#pragma once

#include <stdexcept>
#include <string>

namespace tori {

enum class Errc {
  ConstantPolynomial,
  EndpointIsRoot,
  NotReciprocal,
  OddDegree,
  NotCoprime,
  NotMonic,
  BadRank,
  ZeroLattice,
  NotSquarefree,
  PrecisionExhausted,
  Ambiguous,
  OddDegreeRequested,
  NotUnimodular,
  ClassificationRequired,
  CollisionUnresolved,
  NoCandidateMatches,
  NotSpecial,
  InadmissibleTriple,
  NoDecomposition,
  SearchExhausted,
  ParseError,
  DimensionMismatch,
  InvariantViolation,
  InvalidArgument,
  VerificationFailed,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::ConstantPolynomial: return "ConstantPolynomial";
    case Errc::EndpointIsRoot: return "EndpointIsRoot";
    case Errc::NotReciprocal: return "NotReciprocal";
    case Errc::OddDegree: return "OddDegree";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotMonic: return "NotMonic";
    case Errc::BadRank: return "BadRank";
    case Errc::ZeroLattice: return "ZeroLattice";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::Ambiguous: return "Ambiguous";
    case Errc::OddDegreeRequested: return "OddDegreeRequested";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::ClassificationRequired: return "ClassificationRequired";
    case Errc::CollisionUnresolved: return "CollisionUnresolved";
    case Errc::NoCandidateMatches: return "NoCandidateMatches";
    case Errc::NotSpecial: return "NotSpecial";
    case Errc::InadmissibleTriple: return "InadmissibleTriple";
    case Errc::NoDecomposition: return "NoDecomposition";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::ParseError: return "ParseError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace tori
