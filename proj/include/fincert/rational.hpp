// Copyright 2026 The fincert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FINCERT_RATIONAL_HPP
#define FINCERT_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fincert {

// All certified arithmetic in this library runs on arbitrary-precision
// rationals. boost::multiprecision keeps values reduced to lowest terms
// with a positive denominator, which is exactly the invariant we need.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Rational rational_abs(const Rational& r) { return r < 0 ? -r : r; }

// Exponent must be a nonnegative machine integer; rationals close under
// integer powers so this stays exact.
inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational acc = base;
  for (unsigned e = exponent; e != 0; e >>= 1) {
    if (e & 1u) result *= acc;
    if (e > 1) acc *= acc;
  }
  return result;
}

// Canonical form "p/q" with q omitted when 1, e.g. "-3/4", "7", "0".
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (!is_integer(r)) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

// Accepts "p", "p/q" and plain decimal notation like "-1.25"; decimals
// convert exactly (1.25 -> 5/4). No exponent notation.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("empty scalar '" + std::string(text) + "'");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ParseError("malformed fraction '" + std::string(text) + "'");
    Integer q{std::string(den)};
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer{std::string(num)}, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    if (!whole.empty() && !detail::all_digits(whole))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    if (!frac.empty() && !detail::all_digits(frac))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    Integer scale = 1;
    Integer digits = whole.empty() ? Integer{0} : Integer{std::string(whole)};
    for (char c : frac) {
      digits = digits * 10 + (c - '0');
      scale *= 10;
    }
    value = Rational(digits, scale);
  } else {
    if (!detail::all_digits(s))
      throw ParseError("malformed scalar '" + std::string(text) + "'");
    value = Rational(Integer{std::string(s)});
  }
  return negative ? -value : value;
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r);
}

}  // namespace fincert

#endif  // FINCERT_RATIONAL_HPP
