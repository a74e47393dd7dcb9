#ifndef SKEWSF_ERROR_HPP
#define SKEWSF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace skewsf {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (reducible input, zero divisor,
/// element outside the expected subfield, ...).
class precondition_error : public error {
 public:
  using error::error;
};

/// An exhaustive operation would exceed its configured size bound.
class bound_error : public error {
 public:
  using error::error;
};

/// Malformed textual or JSON input.
class parse_error : public error {
 public:
  using error::error;
};

/// A result that theory guarantees did not materialize. Indicates a bug.
class structural_error : public error {
 public:
  using error::error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw precondition_error(what);
}

}  // namespace detail
}  // namespace skewsf

#endif  // SKEWSF_ERROR_HPP
