#ifndef QDET_ERRORS_HPP
#define QDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdet {

/// Base for mathematical failures (non-invertible values, undefined
/// quasideterminants). `reason()` is a stable one-word tag used by the CLI.
class math_error : public std::runtime_error {
public:
  math_error(std::string reason, const std::string& what)
      : std::runtime_error(what), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

private:
  std::string reason_;
};

class singular_error : public math_error {
public:
  explicit singular_error(const std::string& what) : math_error("Singular", what) {}
};

class not_invertible_error : public math_error {
public:
  explicit not_invertible_error(const std::string& what) : math_error("NotInvertible", what) {}
};

class not_representable_error : public math_error {
public:
  explicit not_representable_error(const std::string& what)
      : math_error("NotRepresentable", what) {}
};

class not_defined_error : public math_error {
public:
  explicit not_defined_error(const std::string& what) : math_error("NotDefined", what) {}
};

// The field-level operator is invertible but no pivot block sequence of the
// quasideterminant recursion works.
class pivot_failure_error : public math_error {
public:
  explicit pivot_failure_error(const std::string& what) : math_error("PivotFailure", what) {}
};

/// Shape, dimension or algebra mismatch between operands.
class dimension_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text or file.
class format_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace qdet

#endif // QDET_ERRORS_HPP
