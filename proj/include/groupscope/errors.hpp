#pragma once

#include <stdexcept>
#include <string>

namespace groupscope {

enum class Err {
  NotAGroup,
  MismatchedParent,
  NotNormal,
  OrderCapExceeded,
  NotAbelian,
  NotPrimePower,
  RankMismatch,
  NotComponentwiseDominated,
  PrimeMismatch,
  NotAbelianCodomain,
  HypothesisViolated,
  NotCentral,
  NotMember,
  ShapeMismatch,
  NotPGroup,
  NotNonabelian,
  ParseError,
  BadParameter,
  SchemaError,
  IoError,
  Overflow,
  Internal,
};

const char* err_name(Err e);

/// Single exception type for the whole library; `code()` identifies the
/// failure class so callers (and the C API) can dispatch without string
/// matching.
class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace groupscope
