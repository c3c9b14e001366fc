#pragma once

#include <stdexcept>
#include <string>

namespace shock {

// Error taxonomy. Kind::Config maps to CLI exit code 2, Kind::Numerical to 3.
class Error : public std::runtime_error {
 public:
  enum class Kind { Config, Numerical };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

#define SHOCK_DEFINE_ERROR(NAME, KIND)                              \
  class NAME : public Error {                                       \
   public:                                                          \
    explicit NAME(const std::string& what)                          \
        : Error(Error::Kind::KIND, std::string(#NAME ": ") + what) {} \
  }

SHOCK_DEFINE_ERROR(NoAdmissibleShock, Numerical);
SHOCK_DEFINE_ERROR(ComplexOrRepeatedEigenvalues, Numerical);
SHOCK_DEFINE_ERROR(ZeroShockFrameSpeed, Numerical);
SHOCK_DEFINE_ERROR(NoConnection, Numerical);
SHOCK_DEFINE_ERROR(DomainTooSmall, Numerical);
SHOCK_DEFINE_ERROR(ShiftOutOfRange, Config);
SHOCK_DEFINE_ERROR(TailAtNoiseFloor, Numerical);
SHOCK_DEFINE_ERROR(NonpositiveTime, Config);
SHOCK_DEFINE_ERROR(NonpositiveBeta, Config);
SHOCK_DEFINE_ERROR(CflViolation, Config);
SHOCK_DEFINE_ERROR(BlowUp, Numerical);
SHOCK_DEFINE_ERROR(DegenerateBasis, Numerical);
SHOCK_DEFINE_ERROR(NoConvergence, Numerical);
SHOCK_DEFINE_ERROR(MeshMismatch, Config);
SHOCK_DEFINE_ERROR(NormAtNoiseFloor, Numerical);
SHOCK_DEFINE_ERROR(QuadratureNonconvergent, Numerical);
SHOCK_DEFINE_ERROR(EnvelopeVanishes, Numerical);
SHOCK_DEFINE_ERROR(ConfigError, Config);

#undef SHOCK_DEFINE_ERROR

}  // namespace shock
