#pragma once

#include <stdexcept>
#include <string>

namespace golfssp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GOLFSSP_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

GOLFSSP_DEFINE_ERROR(NonFiniteValue);
GOLFSSP_DEFINE_ERROR(DegenerateFrame);

GOLFSSP_DEFINE_ERROR(EmptyProfile);
GOLFSSP_DEFINE_ERROR(TargetTooFar);
GOLFSSP_DEFINE_ERROR(EmptyBucket);
GOLFSSP_DEFINE_ERROR(NegativeDistance);

GOLFSSP_DEFINE_ERROR(ParseError);
GOLFSSP_DEFINE_ERROR(InvariantViolation);

GOLFSSP_DEFINE_ERROR(StartNotPlayable);

GOLFSSP_DEFINE_ERROR(ImproperPolicy);
GOLFSSP_DEFINE_ERROR(UnreachableState);
GOLFSSP_DEFINE_ERROR(ProfileSurfaceMissing);
GOLFSSP_DEFINE_ERROR(SimulationRunaway);
GOLFSSP_DEFINE_ERROR(GenerationFailed);

#undef GOLFSSP_DEFINE_ERROR

/// Value iteration hit its iteration cap before the residual dropped below epsilon.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace golfssp
