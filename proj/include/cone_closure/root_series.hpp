#pragma once

#include <utility>
#include <vector>

#include "cone_closure/dyadic.hpp"
#include "cone_closure/polynomial.hpp"
#include "cone_closure/rational.hpp"
#include "cone_closure/weights.hpp"

namespace cone {

struct TruncationCapReached : DomainError {
  TruncationCapReached(unsigned order_, Rational achieved_)
      : DomainError("truncation cap reached before the requested tolerance"),
        order(order_),
        achieved(std::move(achieved_)) {}
  unsigned order;
  Rational achieved;  // best certified tail bound at the cap
};

struct TailBound {
  Rational weight;  // w, the seminorm of the substituted argument
  unsigned order = 0;
  Rational bound;  // |a_N| w^N q/(1-q) with q = w/r, from the stored a_N
};

// Truncated binomial series for (r + sign*t)^(1/2d), coefficients kept on
// the dyadic grid k/2^bits. a_0 is an integer 2d-th root; the rest follow
// the exact ratio recurrence a_{i+1} = a_i (1/2d - i)/((i+1) r) sign with
// one rounding per step, so every stored coefficient is within
// coefficient_error of the true series coefficient.
class RootExpansion {
 public:
  Rational r;
  int sign = 1;  // +1 or -1
  unsigned d = 1;
  unsigned bits = 0;
  std::vector<Int> grid;       // a_i = grid[i] / 2^bits
  Rational coefficient_error;  // max over stored coefficients
  Rational last_error;         // error bound of the final coefficient

  unsigned order() const { return static_cast<unsigned>(grid.size()) - 1; }
  Rational coeff(std::size_t i) const { return dyadic(grid[i], bits); }

  // Requires w < r. Sound against any continuation of the stored series:
  // |a_{i+1}| <= |a_i|/r holds for the recurrence from a_N onward.
  TailBound tail_bound(const Rational& w) const;

  ScaledVec to_svec() const;
};

// Grid precision in bits; CONE_CLOSURE_PRECISION overrides the default 100
// (about 30 decimal digits).
unsigned default_precision_bits();

RootExpansion expand_root_fixed(const Rational& r, int sign, unsigned d, unsigned order,
                                unsigned bits);

// Least order whose certified tail bound at weight w is <= tol, growing the
// recurrence one term at a time; throws TruncationCapReached past cap.
RootExpansion expand_root_auto(const Rational& r, int sign, unsigned d, const Rational& w,
                               const Rational& tol, unsigned bits, unsigned cap = 1000000);

// Continue the recurrence of an existing expansion up to the given order.
void extend_to(RootExpansion& x, unsigned order);

// h0 = sum_{i<=N} a_i X^{is} together with the tail bound at w = phi(s).
// Requires phi(s) < r.
std::pair<Polynomial, TailBound> expand_root_monomial(const Rational& r, int sign,
                                                      const MultiIndex& s, unsigned d,
                                                      unsigned order, const AbsoluteValue& phi,
                                                      unsigned bits);
std::pair<Polynomial, TailBound> expand_root_monomial_auto(const Rational& r, int sign,
                                                           const MultiIndex& s, unsigned d,
                                                           const Rational& tol,
                                                           const AbsoluteValue& phi, unsigned bits,
                                                           unsigned cap = 1000000);

// h = sum_{i<=N} a_i f^i (substitution X -> f). Requires ||f||_phi < r; the
// tail bound uses ||f^i||_phi <= ||f||_phi^i.
std::pair<Polynomial, TailBound> expand_root_composite(const Rational& r, const Polynomial& f,
                                                       unsigned d, unsigned order,
                                                       const AbsoluteValue& phi, unsigned bits);

}  // namespace cone
