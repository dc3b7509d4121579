#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace lightcone {

/// Exact rational coordinate type. GMP keeps every value normalized
/// (denominator > 0, numerator and denominator coprime).
using Scalar = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

Scalar make_scalar(std::int64_t num, std::int64_t den = 1);
Scalar make_scalar(const BigInt& num, const BigInt& den);

BigInt numerator_of(const Scalar& s);
BigInt denominator_of(const Scalar& s);

/// Sign of s as -1, 0 or +1.
int sign(const Scalar& s);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Scalar& s);

/// Parses "num", "num/den" or a finite decimal such as "-0.25".
/// Throws InvalidArgument on malformed input or a zero denominator.
Scalar parse_scalar(std::string_view text);

}  // namespace lightcone
