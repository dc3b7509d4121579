#include "lightcone/scalar.hpp"

#include <cctype>

#include "lightcone/errors.hpp"

namespace lightcone {

Scalar make_scalar(std::int64_t num, std::int64_t den) {
  return make_scalar(BigInt(num), BigInt(den));
}

Scalar make_scalar(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  return Scalar(num, den);
}

BigInt numerator_of(const Scalar& s) { return boost::multiprecision::numerator(s); }
BigInt denominator_of(const Scalar& s) { return boost::multiprecision::denominator(s); }

int sign(const Scalar& s) { return s.sign() < 0 ? -1 : (s.sign() > 0 ? 1 : 0); }

std::string to_string(const Scalar& s) {
  const BigInt den = denominator_of(s);
  if (den == 1) return numerator_of(s).str();
  return numerator_of(s).str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InvalidArgument("malformed integer '" + std::string(s) + "'");
  BigInt v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_scalar(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
    std::string digits(whole);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    digits += frac;
    BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt num = parse_integer(digits);
    return make_scalar(num, den);
  }
  return Scalar(parse_integer(text));
}

}  // namespace lightcone
