#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "promises/error.hpp"

namespace promises {

/// Exact rational number. Expression templates are disabled so `auto`
/// always holds a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using RationalVector = std::vector<Rational>;

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Rational sum(const RationalVector& xs) {
  Rational total = 0;
  for (const auto& x : xs) total += x;
  return total;
}

/// Lowest-terms text form: "7", "-16/9".
inline std::string to_string(const Rational& x) {
  return x.str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "p", "p/q" or a finite decimal "1.25" into an exact rational.
/// A leading sign is accepted on the numerator only.
inline Rational parse_rational(std::string_view text) {
  auto s = detail::trim(text);
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw Error(ErrorCode::ParseError, "malformed rational '" + original + "'");
    const Integer d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + original + "'");
    value = Rational(Integer{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac))
      throw Error(ErrorCode::ParseError, "malformed decimal '" + original + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Integer digits{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    value = Rational(digits, scale);
  } else {
    if (!detail::all_digits(s))
      throw Error(ErrorCode::ParseError, "malformed rational '" + original + "'");
    value = Rational(Integer{std::string(s)});
  }
  return negative ? Rational(-value) : value;
}

}  // namespace promises
