#ifndef SOPF_ERROR_HPP
#define SOPF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sopf {

enum class ErrorCode {
  invalid_argument = 1,
  unsupported_order = 2,
  resource_limit = 3,
  sampling_failure = 4,
  degenerate_reference = 5,
  divergence = 6,
  io_error = 7,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace sopf

#endif
