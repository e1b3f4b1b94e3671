#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cone_closure/complexq.hpp"
#include "cone_closure/multiindex.hpp"
#include "cone_closure/polynomial.hpp"
#include "cone_closure/rational.hpp"

namespace cone {

enum class PhiKind { one, geometric, table };

// Submultiplicative weight on exponent vectors: phi(s+t) <= phi(s)*phi(t),
// phi(0) >= 1. Table kind is validated pairwise at construction.
class AbsoluteValue {
 public:
  using Table = std::map<MultiIndex, Rational, GradedLexLess>;

  static AbsoluteValue one(std::size_t arity);
  static AbsoluteValue geometric(std::vector<Rational> radii);
  // Missing zero entry defaults to 1. Entries need not cover the whole
  // degree ball; evaluating an absent index is a domain error.
  static AbsoluteValue table(std::size_t arity, Table entries);

  Rational operator()(const MultiIndex& s) const;

  PhiKind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  // Largest entry degree for table kind; meaningless otherwise.
  unsigned degree_bound() const { return degree_bound_; }
  bool has_entry(const MultiIndex& s) const;
  const Table& entries() const { return entries_; }
  const std::vector<Rational>& radii() const { return radii_; }

 private:
  AbsoluteValue() = default;

  PhiKind kind_ = PhiKind::one;
  std::size_t arity_ = 0;
  std::vector<Rational> radii_;
  Table entries_;
  unsigned degree_bound_ = 0;
};

// phi + delta. Not submultiplicative, so it is a separate type: only valid
// as a generator weight, never as the seminorm's absolute value.
class WeightFunction {
 public:
  WeightFunction(AbsoluteValue base, Rational shift);

  Rational operator()(const MultiIndex& s) const { return base_(s) + shift_; }
  const AbsoluteValue& base() const { return base_; }
  const Rational& shift() const { return shift_; }

 private:
  AbsoluteValue base_;
  Rational shift_;
};

// ||f||_phi = sum |f_s| phi(s), exact.
template <class Phi>
Rational seminorm(const Polynomial& f, const Phi& phi) {
  Rational acc(0);
  for (const auto& [s, c] : f.terms()) acc += qabs(c) * phi(s);
  return acc;
}

// Upper bound on sum |f_s| phi(s) for complex coefficients. Exact whenever
// every coefficient has rational modulus (real, imaginary, or Pythagorean);
// otherwise within relative 2^-76, rounded up. Sound for certification,
// which only ever needs upper bounds.
template <class Phi>
Rational seminorm_upper(const CPolynomial& f, const Phi& phi) {
  Rational acc(0);
  for (const auto& [s, c] : f.terms()) acc += abs_upper(c.re, c.im) * phi(s);
  return acc;
}

struct KphiResult {
  bool inside = true;
  MultiIndex witness;  // violating index when outside
};

// Degree-D outer approximation of K_phi: checks |x^s| <= phi(s) for all
// |s| <= D (for table weights, for all defined entries with |s| <= D).
// "inside" is one-sided: the exact K_phi needs every degree.
KphiResult kphi_membership(const std::vector<Rational>& x, const AbsoluteValue& phi, unsigned depth);

// Same test for a complex point, via |z^p conj(z)^q|^2 compared exactly.
KphiResult kphi_membership_complex(const std::vector<ComplexQ>& z, const AbsoluteValue& phi,
                                   unsigned depth);

// Weight table on (N^n, +) with an involutive coordinate permutation.
// Only the weak axiom phi(s + s*) <= phi(s)^2 is required. phi' (the largest
// absolute-value minorant over factorizations s = s_1 + ... + s_k, s_i != 0)
// is precomputed for the whole degree ball at construction.
class WeakAbsoluteValue {
 public:
  using Table = std::map<MultiIndex, Rational, GradedLexLess>;

  // entries must cover the full ball {s : |s| <= max entry degree}.
  WeakAbsoluteValue(std::size_t arity, std::vector<unsigned> involution, Table entries);

  static WeakAbsoluteValue from_absolute_value(const AbsoluteValue& phi, unsigned degree_bound,
                                               std::vector<unsigned> involution);

  std::size_t arity() const { return arity_; }
  unsigned degree_bound() const { return degree_bound_; }
  bool degenerate() const { return degenerate_; }
  MultiIndex star(const MultiIndex& s) const;

  Rational raw(const MultiIndex& s) const;    // the table value phi(s)
  Rational value(const MultiIndex& s) const;  // m(s) = min(phi(s), phi(s*))
  Rational phi_prime(const MultiIndex& s) const;

  const Table& entries() const { return entries_; }

 private:
  std::size_t arity_;
  std::vector<unsigned> involution_;
  Table entries_;
  unsigned degree_bound_ = 0;
  bool degenerate_ = false;
  Table psi_;
};

}  // namespace cone
