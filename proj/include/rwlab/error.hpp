#ifndef RWLAB_ERROR_HPP
#define RWLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rwlab {

enum class ErrorCode {
  invalid_argument,
  empty_window,
  degenerate_window,
  resource_limit,
  numeric_failure,
  config,
  io,
};

/// Base exception for every failure raised by the library. The code maps
/// one-to-one onto the C API status values.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond)
    fail(ErrorCode::invalid_argument, what);
}

} // namespace rwlab

#endif
