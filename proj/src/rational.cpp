#include "zcrit/rational.hpp"

#include "zcrit/errors.hpp"

#include <algorithm>
#include <cctype>

namespace zcrit {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) throw ParseError("not a rational number: \"" + std::string(whole) + "\"");
  Integer value{std::string(text)};
  return negative ? Integer(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(text.substr(0, slash)), whole);
    std::string_view den_text = trim(text.substr(slash + 1));
    if (!all_digits(den_text)) throw ParseError("bad denominator in \"" + std::string(whole) + "\"");
    Integer den(std::string{den_text});
    if (den == 0) throw ParseError("zero denominator in \"" + std::string(whole) + "\"");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw ParseError("bad decimal \"" + std::string(whole) + "\"");
    std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    if (digits == "-" || digits == "+" || digits.empty()) throw ParseError("bad decimal \"" + std::string(whole) + "\"");
    Integer num = parse_integer(digits, whole);
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    return Rational(num, den);
  }
  return Rational(parse_integer(text, whole));
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

int sign(const Rational& q) { return q.sign(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace zcrit
