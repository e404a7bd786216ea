// Exception hierarchy for the zzbound core.  The extern-C layer translates
// these into integer status codes; within the C++ core they carry enough
// state (best value, achieved error) for callers to degrade gracefully.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace zzb {

namespace detail {
inline std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}
}  // namespace detail

enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = -1,
  kDomain = -2,
  kUnsupported = -3,
  kNumerical = -4,
  kIo = -5,
  kInternal = -6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::kDomain, what) {}
};

class UnsupportedOperationError : public Error {
 public:
  explicit UnsupportedOperationError(const std::string& what)
      : Error(ErrorCode::kUnsupported, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

// Thrown when an iterative numerical procedure exhausts its budget.  Carries
// the best value reached and the error estimate actually achieved so callers
// can report an honest partial result; both are appended to the message.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double best_value,
                 double achieved_error)
      : Error(ErrorCode::kNumerical,
              what + " (best value " + detail::short_double(best_value) +
                  ", achieved error " + detail::short_double(achieved_error) +
                  ")"),
        best_value_(best_value),
        achieved_error_(achieved_error) {}
  double best_value() const noexcept { return best_value_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_value_;
  double achieved_error_;
};

}  // namespace zzb
