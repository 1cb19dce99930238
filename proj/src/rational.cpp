#include "monarel/rational.hpp"

#include <cctype>

#include "monarel/error.hpp"

namespace monarel {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error("malformed rational '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error("malformed rational '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  BigInt num = parse_integer(body.substr(0, slash), text);
  BigInt den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace monarel
