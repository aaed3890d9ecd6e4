#pragma once

#include <stdexcept>
#include <string>

namespace dtl {

// Every library failure carries a stable kind name; reports key on it.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define DTL_DECLARE_ERROR(Name)                                       \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  };

DTL_DECLARE_ERROR(NonDivisibleDegree)
DTL_DECLARE_ERROR(MismatchedBase)
DTL_DECLARE_ERROR(FieldTooLarge)
DTL_DECLARE_ERROR(DivisionByIndistinguishableZero)
DTL_DECLARE_ERROR(InsufficientPrecision)
DTL_DECLARE_ERROR(AmbiguousMaxRoot)
DTL_DECLARE_ERROR(PrecisionExhausted)
DTL_DECLARE_ERROR(Undecidable)
DTL_DECLARE_ERROR(NotAUnit)
DTL_DECLARE_ERROR(NotInUnitBall)
DTL_DECLARE_ERROR(MixedVariable)
DTL_DECLARE_ERROR(TailNotNegligible)
DTL_DECLARE_ERROR(OutsideLogDomain)
DTL_DECLARE_ERROR(UncertifiedTail)
DTL_DECLARE_ERROR(TorsionRankDeficit)
DTL_DECLARE_ERROR(TowerNotConvergentInWindow)
DTL_DECLARE_ERROR(DegenerateLattice)
DTL_DECLARE_ERROR(DegenerateModule)
DTL_DECLARE_ERROR(NotInvertibleOnThetaDisc)
DTL_DECLARE_ERROR(SplitFailed)
DTL_DECLARE_ERROR(ConfigError)
DTL_DECLARE_ERROR(IoError)

#undef DTL_DECLARE_ERROR

}  // namespace dtl
