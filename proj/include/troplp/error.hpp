#pragma once

#include <stdexcept>
#include <string>

namespace troplp {

enum class ErrorKind {
  Parse,             // malformed scalar, JSON or instance
  Shape,             // dimension mismatch or digraph of unexpected shape
  Balanced,          // operation needs a signed value but got a balanced one
  Singular,          // tropical system without a unique signed solution
  DegenerateInput,   // tie that genericity would have excluded
  NotStandard,       // instance outside the standing assumptions
  AssumptionC,       // lift requested without a positivity certificate
  DegenerateLift,    // tie in the classical ratio test
  TooLarge,          // exhaustive search over the configured bound
  Internal,          // invariant violated; a bug
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Shape: return "ShapeViolation";
    case ErrorKind::Balanced: return "BalancedValue";
    case ErrorKind::Singular: return "SingularSystem";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotStandard: return "NotStandard";
    case ErrorKind::AssumptionC: return "AssumptionCViolated";
    case ErrorKind::DegenerateLift: return "DegenerateLift";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void ensure(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace troplp
