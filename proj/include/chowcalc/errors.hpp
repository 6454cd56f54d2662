// Error taxonomy for chowcalc.  Every failure the library can diagnose is
// thrown as a chowcalc::Error carrying a stable code; the CLI maps codes to
// process exit status (see tools/chowcalc_main.cpp).

#pragma once

#include <stdexcept>
#include <string>

namespace chowcalc {

enum class Err {
  // polynomial layer
  ZeroPolynomial,
  NegativeCoefficient,
  NonzeroRemainder,
  NonIntegralCoefficient,
  // polymatroid layer
  RankAxiomViolation,
  NotLoopless,
  NotAMatroid,
  GroundTooLarge,
  UnknownElement,
  // lattice layer
  NotALattice,
  LatticeTooLarge,
  UnknownFlat,
  // building sets / nested sets
  NotABuildingSet,
  NotNested,
  // engines
  TooManyChains,
  NoValidOrdering,
  NonInvertibleDiagonal,
  IdentityViolated,
  EngineDisagreement,
  // braid / series
  NonIntegralKeelTerm,
  TruncationResidue,
  // io / cli
  ParseError,
  GoldenMismatch,
  // should-never-happen cross-check failures
  InternalError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg),
        code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace chowcalc
