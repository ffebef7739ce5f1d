#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dpcc {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
/// Parses "p/q" or an integer; throws std::invalid_argument.
Rational parse_rational(const std::string& text);
double to_double(const Rational& q);

/// Exact (M, R) pair, both in units of one file.
struct RatePoint {
  Rational M;
  Rational R;

  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

}  // namespace dpcc
