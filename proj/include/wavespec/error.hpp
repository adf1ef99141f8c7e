#pragma once

#include <stdexcept>
#include <string>

namespace wavespec {

// Broad categories; the CLI maps Validation to exit code 1 and the rest to 2.
enum class ErrorKind {
  Validation,   // bad input, violated precondition or modelling assumption
  Domain,       // argument outside the mathematical domain (e.g. H not in (0,1))
  Synthesis,    // circulant embedding failed
  Regime,       // dimension/scale regime violated (p vs n_aj, ...)
  Degenerate,   // non-positive eigenvalue where a log is required
  Numerical,    // quadrature or eigensolver failure
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Synthesis: return "synthesis";
    case ErrorKind::Regime: return "regime";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace wavespec
