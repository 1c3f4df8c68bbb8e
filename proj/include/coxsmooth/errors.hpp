#ifndef COXSMOOTH_ERRORS_HPP
#define COXSMOOTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coxsmooth {

// Bad input or violated operation precondition: the caller can fix the call.
// The CLI maps this to exit code 1.
struct UserError : std::runtime_error {
  explicit UserError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap was hit (interval size, enumeration frontier).
struct CapExceeded : UserError {
  explicit CapExceeded(const std::string& msg) : UserError(msg) {}
};

// A structural guarantee of the factorization theory failed on input that
// satisfied the preconditions.  Always a reportable event, never swallowed.
// The CLI maps this to exit code 2.
struct TheoremViolation : std::logic_error {
  explicit TheoremViolation(const std::string& msg) : std::logic_error(msg) {}
};

// An internal invariant failed (e.g. a root vector with mixed coordinate
// signs).  Indicates a bug in this library.  CLI exit code 2.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace coxsmooth

#endif
