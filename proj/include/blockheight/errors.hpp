#pragma once

#include <stdexcept>
#include <string>

namespace blockheight {

/// Computational error with a stable machine-readable code.
/// Codes in use: CapExceeded, NotASubgroup, NoSuitablePrime,
/// EigenspaceSplitFailure, FormatError, InvariantViolation,
/// NonIntegralMultiplicity, NonIntegralOmega, NotNormal,
/// DefectOrderMismatch, NotAPGroup, BadActionParameter.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

} // namespace blockheight
