#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace radconc {

using Cx = std::complex<double>;

enum class ErrorKind {
  Domain,         // parameter outside its legal range
  Usage,          // unsupported combination of otherwise valid inputs
  Singularity,    // evaluation point too close to a pole or boundary singularity
  CriticalPoint,  // F'(z) vanished (|F'(z)| <= 1e-12)
  Precondition,   // caller-supplied data violates a stated hypothesis
};

/// Base for every error raised by the library. Errors tied to a point of the
/// disk carry that point so reports can name the offending z.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<Cx> where = std::nullopt)
      : std::runtime_error(what), kind_(kind), where_(where) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<Cx>& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<Cx> where_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, Cx z) : Error(ErrorKind::Singularity, what, z) {}
};

class CriticalPointError : public Error {
 public:
  CriticalPointError(const std::string& what, Cx z) : Error(ErrorKind::CriticalPoint, what, z) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::CriticalPoint: return "critical-point";
    case ErrorKind::Precondition: return "precondition";
  }
  return "unknown";
}

}  // namespace radconc
