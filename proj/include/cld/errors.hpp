#pragma once
#include <stdexcept>
#include <string>

namespace cld {

// Codes double as the C API status values.
enum class Status : int {
  ok = 0,
  invalid_argument = 1,
  window_exhausted = 2,
  not_converged = 3,
  not_projection = 4,
  unsupported = 5,
  parse_error = 6,
  io_error = 7,
  internal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& what) { throw Error(s, what); }

}  // namespace cld
