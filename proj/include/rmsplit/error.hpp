#pragma once

#include <stdexcept>
#include <string>

namespace rmsplit {

// Failure kinds named by the library's documented error contracts.
enum class Errc {
  invalid_element,
  domain,
  numeric,
  nonconvergence,
  degeneracy,
  real_roots,
  not_special,
  tolerance,
  bad_prime,
  inconsistent,
  overflow,
  parse,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rmsplit
