#pragma once

#include <stdexcept>
#include <string>

namespace comasslab {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  degree_overflow,
  unsupported_degree,
  parse_error,
  numeric_overflow,
  internal,
};

// All core failures are thrown as Error; the C boundary maps Errc to status
// codes, nothing else crosses it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace comasslab
