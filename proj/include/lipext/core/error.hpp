#pragma once

#include <stdexcept>
#include <string>

namespace lipext {

// Error categories map one-to-one onto CLI exit codes (see tools/lipext.cpp).
enum class ErrorKind {
  kDomain,        // argument outside the mathematical domain of the operation
  kShape,         // malformed matrix / vector dimensions
  kConnectivity,  // graph must be connected
  kRegularity,    // graph must be regular
  kParity,        // nd odd in a regular-graph request
  kSampling,      // rejection budget exhausted
  kCapacity,      // instance too large for the exact method
  kInfeasible,    // LP / flow has no feasible point
  kNumerical,     // solver could not certify its answer
  kInvariant,     // internal consistency check failed
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kConnectivity: return "connectivity";
    case ErrorKind::kRegularity: return "regularity";
    case ErrorKind::kParity: return "parity";
    case ErrorKind::kSampling: return "sampling";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kInvariant: return "invariant";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace lipext
