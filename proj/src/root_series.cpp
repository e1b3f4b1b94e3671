#include "cone_closure/root_series.hpp"

#include <cstdlib>
#include <string>

namespace cone {

namespace {

// One recurrence step on the grid plus the matching error-bound step.
// ratio_i = (1 - 2d*i) / (2d*(i+1)*r) * sign.
void step(const Rational& r, int sign, unsigned d, unsigned i, std::vector<Int>& grid,
          Rational& err, unsigned bits) {
  const Int np = Int(1) - Int(2) * d * i;
  const Int dp = Int(2) * d * (i + 1);
  const Int a = grid.back() * np * den(r) * sign;
  const Int b = dp * num(r);
  grid.push_back(round_div(a, b));
  // |round(x*ratio) - x_true*ratio| <= |x - x_true|*|ratio| + half a grid unit
  Rational ratio_abs = ratio(abs(np) * den(r), dp * num(r));
  err = err * ratio_abs + dyadic(1, bits + 1);
  err = round_up_dyadic(err, bits + 16);
}

}  // namespace

TailBound RootExpansion::tail_bound(const Rational& w) const {
  if (w < 0) throw UsageError("tail bound weight must be nonnegative");
  if (w >= r) throw DomainError("series diverges: weight " + rational_str(w) +
                                " is not below the expansion constant " + rational_str(r));
  TailBound tb;
  tb.weight = w;
  tb.order = order();
  // |a_{k+1}/a_k| <= 1/r for every k, so the tail is dominated by the
  // geometric series in w/r; q/(1-q) with q = w/r is w/(r-w). The stored
  // coefficient may undershoot the true one by the rounding error, so that
  // error is added back before majorizing.
  tb.bound =
      (dyadic(abs(grid.back()), bits) + last_error) * qpow(w, order()) * (w / (r - w));
  return tb;
}

ScaledVec RootExpansion::to_svec() const {
  ScaledVec v;
  v.scale = dyadic(1, bits);
  v.num = grid;
  v.trim();
  return v;
}

unsigned default_precision_bits() {
  static const unsigned cached = [] {
    if (const char* env = std::getenv("CONE_CLOSURE_PRECISION")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end && *end == '\0' && v >= 16 && v <= 4096) return static_cast<unsigned>(v);
    }
    return 100u;
  }();
  return cached;
}

RootExpansion expand_root_fixed(const Rational& r, int sign, unsigned d, unsigned order,
                                unsigned bits) {
  if (r <= 0) throw UsageError("root expansion needs a positive constant term");
  if (d < 1) throw UsageError("exponent parameter d must be >= 1");
  if (sign != 1 && sign != -1) throw UsageError("sign must be +1 or -1");
  RootExpansion x;
  x.r = r;
  x.sign = sign;
  x.d = d;
  x.bits = bits;
  // a_0 = r^(1/2d) on the grid: with r = n/m this is the integer 2d-th root
  // of n m^(2d-1) 2^(2d*bits), divided by m. Floor of the root plus the
  // final rounded division stay within 3 half-units of the true value.
  const Int scaled = num(r) * ipow(den(r), 2 * d - 1) * pow2(2 * d * bits);
  const Int root = iroot_floor(scaled, 2 * d);
  x.grid.push_back(round_div(root, den(r)));
  x.last_error = dyadic(3, bits + 1);
  x.coefficient_error = x.last_error;
  extend_to(x, order);
  return x;
}

void extend_to(RootExpansion& x, unsigned order) {
  while (x.order() < order) {
    step(x.r, x.sign, x.d, x.order(), x.grid, x.last_error, x.bits);
    x.coefficient_error = qmax(x.coefficient_error, x.last_error);
  }
}

RootExpansion expand_root_auto(const Rational& r, int sign, unsigned d, const Rational& w,
                               const Rational& tol, unsigned bits, unsigned cap) {
  if (tol <= 0) throw UsageError("series tolerance must be positive");
  if (w >= r) throw DomainError("series diverges: weight " + rational_str(w) +
                                " is not below the expansion constant " + rational_str(r));
  RootExpansion x = expand_root_fixed(r, sign, d, 0, bits);
  const Rational geom = w / (r - w);  // q/(1-q)
  Rational w_pow(1);
  Rational bound = (dyadic(abs(x.grid.back()), bits) + x.last_error) * geom;
  Rational best = bound;
  // When w > 1 the rounding floor 2^-bits * w^N eventually dominates and the
  // bound stops shrinking; bail out instead of grinding to the hard cap.
  unsigned stale = 0;
  while (bound > tol) {
    if (x.order() >= cap || stale > 256) throw TruncationCapReached(x.order(), best);
    extend_to(x, x.order() + 1);
    w_pow *= w;
    bound = (dyadic(abs(x.grid.back()), bits) + x.last_error) * w_pow * geom;
    if (bound < best) {
      best = bound;
      stale = 0;
    } else {
      ++stale;
    }
  }
  return x;
}

std::pair<Polynomial, TailBound> expand_root_monomial(const Rational& r, int sign,
                                                      const MultiIndex& s, unsigned d,
                                                      unsigned order, const AbsoluteValue& phi,
                                                      unsigned bits) {
  if (s.is_zero()) throw UsageError("monomial expansion direction must be nonzero");
  const Rational w = phi(s);
  if (w >= r)
    throw DomainError("series diverges: phi(s) = " + rational_str(w) + " is not below r = " +
                      rational_str(r));
  RootExpansion x = expand_root_fixed(r, sign, d, order, bits);
  return {svec_to_poly(x.to_svec(), s.arity(), s), x.tail_bound(w)};
}

std::pair<Polynomial, TailBound> expand_root_monomial_auto(const Rational& r, int sign,
                                                           const MultiIndex& s, unsigned d,
                                                           const Rational& tol,
                                                           const AbsoluteValue& phi, unsigned bits,
                                                           unsigned cap) {
  if (s.is_zero()) throw UsageError("monomial expansion direction must be nonzero");
  const Rational w = phi(s);
  RootExpansion x = expand_root_auto(r, sign, d, w, tol, bits, cap);
  return {svec_to_poly(x.to_svec(), s.arity(), s), x.tail_bound(w)};
}

std::pair<Polynomial, TailBound> expand_root_composite(const Rational& r, const Polynomial& f,
                                                       unsigned d, unsigned order,
                                                       const AbsoluteValue& phi, unsigned bits) {
  const Rational w = seminorm(f, phi);
  if (w >= r)
    throw DomainError("series diverges: ||f||_phi = " + rational_str(w) + " is not below r = " +
                      rational_str(r));
  // sign is carried by f itself here; expand for +t and substitute t -> f.
  RootExpansion x = expand_root_fixed(r, 1, d, order, bits);
  Polynomial h = Polynomial::constant(f.arity(), x.coeff(x.order()));
  for (unsigned i = x.order(); i-- > 0;) {
    h = h * f;
    h += Polynomial::constant(f.arity(), x.coeff(i));
  }
  return {h, x.tail_bound(w)};
}

}  // namespace cone
