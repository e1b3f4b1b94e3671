#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cone {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Bad user input: malformed files, arity mismatches, out-of-range arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mathematically ill-posed request: series divergence, weight-table overflow,
// violated preconditions detected mid-computation.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

// n/d in lowest terms, d != 0 enforced.
Rational ratio(const Int& n, const Int& d);

Int ipow(const Int& b, unsigned e);
Rational qpow(const Rational& b, unsigned e);
Rational qabs(const Rational& q);
Rational qmin(const Rational& a, const Rational& b);
Rational qmax(const Rational& a, const Rational& b);

// floor(a^(1/k)) for a >= 0.
Int iroot_floor(const Int& a, unsigned k);

// Quotients with b > 0.
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int round_div(const Int& a, const Int& b);  // nearest, ties away from zero

Int pow2(unsigned bits);
Rational dyadic(const Int& numer, unsigned bits);   // numer / 2^bits
Int dyadic_round(const Rational& x, unsigned bits);  // round(x * 2^bits) to nearest
Rational round_up_dyadic(const Rational& x, unsigned bits);

// Best rational approximation of x with denominator <= max_den
// (continued-fraction convergents and semiconvergents).
Rational cf_round(double x, std::uint64_t max_den);

// True iff x is the square of a rational; root receives the nonnegative root.
bool rational_sqrt(const Rational& x, Rational& root);

// Tight rational upper bound on sqrt(re^2 + im^2); exact when the modulus is
// rational, otherwise within relative 2^-76 of the true value.
Rational abs_upper(const Rational& re, const Rational& im);

double to_double(const Rational& q);

// Accepts "n", "n/d", optional leading '-'. Denominator must be positive.
Rational parse_rational(const std::string& s);

// Always "n/d", even for integers, so files and reports stay uniform.
std::string rational_str(const Rational& q);

}  // namespace cone
