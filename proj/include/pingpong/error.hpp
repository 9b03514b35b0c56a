#pragma once

#include <stdexcept>
#include <string>

namespace pingpong {

enum class ErrorKind {
  invalid_input,  // malformed or mathematically inadmissible input data
  precondition,   // caller violated an operation's precondition
  internal,       // an invariant that must hold for valid input failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string stage = {})
      : std::runtime_error(message), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

  /// Copy of this error tagged with a pipeline stage (outermost tag wins).
  Error tagged(const std::string& stage) const { return Error(kind_, what(), stage_.empty() ? stage : stage_); }

 private:
  ErrorKind kind_;
  std::string stage_;
};

inline Error invalid_input(const std::string& msg) { return Error(ErrorKind::invalid_input, msg); }
inline Error precondition(const std::string& msg) { return Error(ErrorKind::precondition, msg); }
inline Error internal_error(const std::string& msg) { return Error(ErrorKind::internal, msg); }

}  // namespace pingpong
