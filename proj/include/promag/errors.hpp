#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace promag {

// Failure categories. The CLI maps these onto its exit-code contract;
// library callers can switch on code() instead of matching message text.
enum class Errc {
  parse_error,
  unknown_generator,
  domain_mismatch,
  division_by_zero,
  not_invertible,
  precision_exhausted,
  cap_exceeded,
  relator_violation,
  bad_argument,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

// Parse failures carry the byte offset of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(Errc::parse_error, msg + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace promag
