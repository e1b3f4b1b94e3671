#include "cone_closure/rational.hpp"

#include <cmath>
#include <limits>

namespace cone {

Rational ratio(const Int& n, const Int& d) {
  if (d == 0) throw UsageError("rational with zero denominator");
  Rational q(n, d);
  // mpq_rational(n, d) does not canonicalize on its own.
  mpq_canonicalize(q.backend().data());
  return q;
}

Int ipow(const Int& b, unsigned e) {
  Int r;
  mpz_pow_ui(r.backend().data(), b.backend().data(), e);
  return r;
}

Rational qpow(const Rational& b, unsigned e) {
  if (e == 0) return Rational(1);
  return ratio(ipow(num(b), e), ipow(den(b), e));
}

Rational qabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
Rational qmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational qmax(const Rational& a, const Rational& b) { return a > b ? a : b; }

Int iroot_floor(const Int& a, unsigned k) {
  if (a < 0) throw DomainError("integer root of negative value");
  Int r;
  mpz_root(r.backend().data(), a.backend().data(), k);
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

Int round_div(const Int& a, const Int& b) {
  // b > 0; round half away from zero keeps |round(x)| >= |x| - 1/2.
  Int two_a = a * 2;
  if (a >= 0) return floor_div(two_a + b, b * 2);
  return ceil_div(two_a - b, b * 2);
}

Int pow2(unsigned bits) {
  Int r = 1;
  r <<= bits;
  return r;
}

Rational dyadic(const Int& numer, unsigned bits) { return ratio(numer, pow2(bits)); }

Int dyadic_round(const Rational& x, unsigned bits) {
  return round_div(num(x) * pow2(bits), den(x));
}

Rational round_up_dyadic(const Rational& x, unsigned bits) {
  return dyadic(ceil_div(num(x) * pow2(bits), den(x)), bits);
}

Rational cf_round(double x, std::uint64_t max_den) {
  if (!std::isfinite(x)) throw DomainError("cannot round non-finite value");
  const bool neg = x < 0;
  double v = std::fabs(x);
  // Convergents p/q of the continued fraction of v.
  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double f = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(f);
    if (fl > 9.0e18) break;
    std::uint64_t a = static_cast<std::uint64_t>(fl);
    if (q1 != 0 && a > (std::numeric_limits<std::uint64_t>::max() - q0) / q1) break;
    std::uint64_t p2 = a * p1 + p0;
    std::uint64_t q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Best semiconvergent under the cap.
      std::uint64_t k = q1 == 0 ? 0 : (max_den - q0) / q1;
      std::uint64_t ps = k * p1 + p0, qs = k * q1 + q0;
      double best = std::fabs(v - double(p1) / double(q1));
      double semi = qs == 0 ? std::numeric_limits<double>::infinity()
                            : std::fabs(v - double(ps) / double(qs));
      if (semi < best) { p1 = ps; q1 = qs; }
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = f - fl;
    if (rem < 1e-15) break;
    f = 1.0 / rem;
  }
  if (q1 == 0) { p1 = 0; q1 = 1; }
  Rational r = ratio(Int(p1), Int(q1));
  return neg ? Rational(-r) : r;
}

bool rational_sqrt(const Rational& x, Rational& root) {
  if (x < 0) return false;
  Int n = num(x), d = den(x);
  if (mpz_perfect_square_p(n.backend().data()) == 0) return false;
  if (mpz_perfect_square_p(d.backend().data()) == 0) return false;
  root = ratio(iroot_floor(n, 2), iroot_floor(d, 2));
  return true;
}

Rational abs_upper(const Rational& re, const Rational& im) {
  if (im == 0) return qabs(re);
  if (re == 0) return qabs(im);
  Rational n = re * re + im * im;
  Rational root;
  if (rational_sqrt(n, root)) return root;
  // ceil(sqrt(a*b) * 2^76) / (b * 2^76) >= sqrt(a/b), within relative 2^-76.
  constexpr unsigned kBits = 76;
  Int a = num(n), b = den(n);
  Int m = iroot_floor(a * b * ipow(Int(2), 2 * kBits), 2) + 1;
  return ratio(m, b * pow2(kBits));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw UsageError("empty rational");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(t));
    Int n(t.substr(0, slash));
    Int d(t.substr(slash + 1));
    if (d <= 0) throw UsageError("rational denominator must be positive: " + s);
    return ratio(n, d);
  } catch (const std::runtime_error&) {
    throw UsageError("malformed rational: " + s);
  }
}

std::string rational_str(const Rational& q) {
  return num(q).str() + "/" + den(q).str();
}

}  // namespace cone
