#pragma once

#include <utility>
#include <vector>

#include "cone_closure/certificates.hpp"
#include "cone_closure/polynomial.hpp"

namespace cone {

struct SymbolicIdentityReport {
  Polynomial lhs;
  Polynomial rhs;
  bool equal = false;
  Polynomial discrepancy;  // lhs - rhs
};

// n! X = sum_{h=0}^{n-1} (-1)^(n-1-h) C(n-1,h) [(X+h)^n - h^n], univariate.
SymbolicIdentityReport hw_identity_check(unsigned n);

// a = P1 - P2 with both sides nonnegative combinations of 2d-th powers,
// from the n!X identity at n = 2d with X := a. Exactness is re-verified by
// expansion before returning.
std::pair<SumOfPowers, SumOfPowers> power_split(const Polynomial& a, unsigned d);

// The two expansion displays behind the "k sufficiently large" argument:
// k^n(a+r) - 1 - (k-t)^n(a+r) against its regrouped form, and the pairwise
// grouping of sum_i C(n,i) k^(n-i) (-t)^(i-1). All four symbols are
// polynomials over one shared variable set; the rational overload lifts
// r, k to constants.
std::vector<SymbolicIdentityReport> basic_trick_check(unsigned n, const Polynomial& a,
                                                      const Polynomial& t, const Polynomial& r,
                                                      const Polynomial& k);
std::vector<SymbolicIdentityReport> basic_trick_check(unsigned n, const Polynomial& a,
                                                      const Polynomial& t, const Rational& r,
                                                      const Rational& k);

}  // namespace cone
