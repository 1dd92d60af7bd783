#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace opineq {

enum class ErrorCode {
  NotHermitian,
  NotSquare,
  DomainViolation,
  NotPositiveDefinite,
  DimensionMismatch,
  ConvergenceFailure,
  KExceedsDim,
  NotIsometry,
  OverflowGuard,
  UnknownCheckId,
  ConfigParse,
  IOFailure,
};

/// Base of every error thrown by the library. Errors that stem from an
/// offending scalar (an eigenvalue outside a domain, a non-positive
/// denominator) carry it as `witness()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<double> witness = std::nullopt)
      : std::runtime_error(what), code_(code), witness_(witness) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::optional<double> witness_;
};

#define OPINEQ_DEFINE_ERROR(Name)                                                  \
  class Name : public Error {                                                      \
   public:                                                                         \
    explicit Name(const std::string& what, std::optional<double> witness = std::nullopt) \
        : Error(ErrorCode::Name, what, witness) {}                                 \
  };

OPINEQ_DEFINE_ERROR(NotHermitian)
OPINEQ_DEFINE_ERROR(NotSquare)
OPINEQ_DEFINE_ERROR(DomainViolation)
OPINEQ_DEFINE_ERROR(NotPositiveDefinite)
OPINEQ_DEFINE_ERROR(DimensionMismatch)
OPINEQ_DEFINE_ERROR(ConvergenceFailure)
OPINEQ_DEFINE_ERROR(KExceedsDim)
OPINEQ_DEFINE_ERROR(NotIsometry)
OPINEQ_DEFINE_ERROR(OverflowGuard)
OPINEQ_DEFINE_ERROR(UnknownCheckId)
OPINEQ_DEFINE_ERROR(ConfigParse)
OPINEQ_DEFINE_ERROR(IOFailure)

#undef OPINEQ_DEFINE_ERROR

}  // namespace opineq
