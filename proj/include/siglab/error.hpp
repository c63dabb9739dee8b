#pragma once

#include <stdexcept>
#include <string>

namespace siglab {

enum class Err {
  EvenResolution,
  ResolutionTooSmall,
  BadExtent,
  OutOfDomain,
  NonFiniteSample,
  InadmissibleBall,
  InadmissibleBoundary,
  NonConvergence,
  DegenerateBoundaryMass,
  DegenerateField,
  DomainExceeded,
  NotInQ,
  NotSingularFit,
  NotRegularSeed,
  NoCrossingInWindow,
  EmptyRadii,
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

}  // namespace siglab
