#ifndef QDET_SCALAR_HPP
#define QDET_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace qdet {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Scalar = mpq_class;

/// Parses "p", "-p", "+p" or "p/q" with decimal digits only and q > 0.
inline Scalar parse_scalar(std::string_view text) {
  auto fail = [&] { return format_error("invalid scalar '" + std::string(text) + "'"); };
  if (text.empty())
    throw fail();
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  auto digits = [](std::string_view s) {
    if (s.empty())
      return false;
    for (char ch : s)
      if (ch < '0' || ch > '9')
        return false;
    return true;
  };
  if (!digits(num) || (slash != std::string_view::npos && !digits(den)))
    throw fail();

  mpz_class p(std::string(num), 10);
  mpz_class q(1);
  if (slash != std::string_view::npos) {
    q = mpz_class(std::string(den), 10);
    if (q == 0)
      throw format_error("zero denominator in scalar '" + std::string(text) + "'");
  }
  if (negative)
    p = -p;
  Scalar value(p, q);
  value.canonicalize();
  return value;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Scalar& s) { return s.get_str(10); }

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

} // namespace qdet

#endif // QDET_SCALAR_HPP
