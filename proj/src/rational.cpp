#include "dpcc/rational.hpp"

#include <regex>
#include <stdexcept>

namespace dpcc {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  static const std::regex form(R"([+-]?\d+(/[+-]?\d+)?)");
  if (!std::regex_match(text, form)) throw std::invalid_argument("not a rational number: '" + text + "'");
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    const boost::multiprecision::cpp_int num(text.substr(0, slash));
    const boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace dpcc
