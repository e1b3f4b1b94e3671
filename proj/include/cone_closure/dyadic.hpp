#pragma once

#include <vector>

#include "cone_closure/polynomial.hpp"

namespace cone {

// Dense univariate polynomial with one shared rational scale:
//   value(k) = scale * num[k].
// This is the workhorse representation for truncated power series and their
// 2d-th powers: products reduce to integer convolutions (see kernels::conv),
// which stay exact and fast where a generic sparse rational multiply drowns
// in gcd work.
struct ScaledVec {
  Rational scale{1};
  std::vector<Int> num;

  std::size_t size() const { return num.size(); }
  Rational at(std::size_t k) const {
    return k < num.size() ? Rational(scale * num[k]) : Rational(0);
  }
  bool is_zero() const;
  void trim();  // drop trailing zero numerators
};

ScaledVec svec_mul(const ScaledVec& a, const ScaledVec& b);
ScaledVec svec_pow(const ScaledVec& a, unsigned e);  // e >= 1
ScaledVec svec_add(const ScaledVec& a, const ScaledVec& b);
ScaledVec svec_scale(const ScaledVec& a, const Rational& s);

// Interpret entry k as the coefficient of X^(k*dir).
Polynomial svec_to_poly(const ScaledVec& v, std::size_t arity, const MultiIndex& dir);

// Inverse of svec_to_poly: succeeds iff every exponent of f is an integer
// multiple of dir (dir nonzero). The scale becomes 1/common_denominator.
bool poly_to_svec(const Polynomial& f, const MultiIndex& dir, ScaledVec& out);

// Primitive common direction of a set of exponents: smallest nonzero exponent
// if every other exponent is an integer multiple of it. Returns false when the
// set is not aligned on a single ray.
bool common_direction(const std::vector<MultiIndex>& exps, MultiIndex& dir);

}  // namespace cone
