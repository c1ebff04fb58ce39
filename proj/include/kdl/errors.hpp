#pragma once

#include <stdexcept>
#include <string>

namespace kdl {

enum class ErrorKind {
  DegenerateCurve,
  OutOfRange,
  NotEmbedded,
  InvalidSpec,
  NotAKnot,
  SelfIntersecting,
  HypothesisViolated,
  NonPositiveClearance,
  NotAlternating,
  InfeasibleStart,
  Parse,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kdl
