#pragma once

// Exact rationals for interval endpoints and uncertainty products.

#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "qepi/error.hpp"

namespace qepi {

// Always normalized: reduced, positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct InvalidNumber : Error {
  using Error::Error;
};

// "a/b" for non-integers, "a" otherwise.
inline std::string to_string(const Rational& r) { return r.str(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace detail

// Accepts integers ("-1"), fractions ("1/6") and finite decimals ("0.25").
// Decimals are converted exactly.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw InvalidNumber("malformed fraction '" + std::string(text) + "'");
    }
    Integer d{std::string(den)};
    if (d == 0) throw InvalidNumber("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (!detail::all_digits(whole) || !detail::all_digits(frac)) {
      throw InvalidNumber("malformed decimal '" + std::string(text) + "'");
    }
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    value = Rational(Integer(std::string(whole)) * scale + Integer(std::string(frac)), scale);
  } else {
    if (!detail::all_digits(s)) throw InvalidNumber("malformed number '" + std::string(text) + "'");
    value = Rational(Integer(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace qepi
