#include "fibresum/bigint.hpp"

#include <cctype>
#include <stdexcept>

namespace fibresum {

std::string to_string(const Rational& v) { return v.get_str(); }

namespace {

bool is_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

BigInt parse_bigint(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  if (!is_digits(body)) throw std::invalid_argument("not an integer: '" + text + "'");
  BigInt v(body, 10);
  return negative ? BigInt(-v) : v;
}

Rational parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) throw std::invalid_argument("not a rational: '" + text + "'");
    BigInt d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    out = Rational(BigInt(num, 10), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!is_digits(whole) || (!frac.empty() && !is_digits(frac)))
      throw std::invalid_argument("not a decimal: '" + text + "'");
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(BigInt(whole + frac, 10), scale);
  } else {
    if (!is_digits(body)) throw std::invalid_argument("not a number: '" + text + "'");
    out = Rational(BigInt(body, 10));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace fibresum
