#pragma once

#include "cone_closure/rational.hpp"

namespace cone {

// Complex number with exact rational real and imaginary parts.
struct ComplexQ {
  Rational re, im;

  ComplexQ() : re(0), im(0) {}
  ComplexQ(Rational r) : re(std::move(r)), im(0) {}  // NOLINT: implicit on purpose
  ComplexQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  ComplexQ conj() const { return {re, Rational(-im)}; }
  Rational norm_sq() const { return re * re + im * im; }

  bool operator==(const ComplexQ& o) const = default;

  ComplexQ& operator+=(const ComplexQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexQ& operator-=(const ComplexQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexQ operator+(ComplexQ a, const ComplexQ& b) { return a += b; }
  friend ComplexQ operator-(ComplexQ a, const ComplexQ& b) { return a -= b; }
  friend ComplexQ operator-(const ComplexQ& a) { return {Rational(-a.re), Rational(-a.im)}; }
  friend ComplexQ operator*(const ComplexQ& a, const ComplexQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

inline ComplexQ cpow(ComplexQ b, unsigned e) {
  ComplexQ r{Rational(1)};
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1u;
  }
  return r;
}

// Coefficient traits shared by the polynomial template.
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const ComplexQ& c) { return c.is_zero(); }
inline Rational coeff_scale(const Rational& c, const Rational& s) { return c * s; }
inline ComplexQ coeff_scale(const ComplexQ& c, const Rational& s) {
  return {c.re * s, c.im * s};
}

}  // namespace cone
