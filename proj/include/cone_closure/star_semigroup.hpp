#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cone_closure/complexq.hpp"
#include "cone_closure/generators.hpp"
#include "cone_closure/polynomial.hpp"
#include "cone_closure/weights.hpp"

namespace cone {

// The two shipped commutative *-semigroup families. Elements are exponent
// vectors: length n for the free case, length 2n for conjugate pairs where
// (p, q) stands for z^p conj(z)^q and (p, q)* = (q, p).
struct StarSemigroup {
  enum class Kind { free_commutative, conjugate_pair };

  Kind kind = Kind::free_commutative;
  std::size_t n = 0;

  static StarSemigroup free_commutative(std::size_t n) {
    return {Kind::free_commutative, n};
  }
  static StarSemigroup conjugate_pair(std::size_t n) { return {Kind::conjugate_pair, n}; }

  std::size_t index_arity() const { return kind == Kind::conjugate_pair ? 2 * n : n; }
  MultiIndex neutral() const { return MultiIndex(index_arity()); }
  MultiIndex star(const MultiIndex& s) const;

  bool operator==(const StarSemigroup& o) const { return kind == o.kind && n == o.n; }
};

// Element of the semigroup algebra C[S] with exact complex coefficients.
class StarElement {
 public:
  explicit StarElement(StarSemigroup sg) : sg_(sg), poly_(sg.index_arity()) {}
  StarElement(StarSemigroup sg, CPolynomial poly);

  static StarElement term(StarSemigroup sg, const MultiIndex& s, const ComplexQ& c);
  static StarElement constant(StarSemigroup sg, const ComplexQ& c);

  const StarSemigroup& semigroup() const { return sg_; }
  const CPolynomial& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  ComplexQ coeff(const MultiIndex& s) const { return poly_.coeff(s); }
  ComplexQ constant_term() const { return poly_.constant_term(); }
  void add_term(const MultiIndex& s, const ComplexQ& c) { poly_.add_term(s, c); }

  StarElement operator+(const StarElement& o) const;
  StarElement operator-(const StarElement& o) const;
  StarElement operator*(const StarElement& o) const;
  StarElement& operator+=(const StarElement& o);
  StarElement operator-() const;
  StarElement scaled(const ComplexQ& c) const;
  bool operator==(const StarElement& o) const { return sg_ == o.sg_ && poly_ == o.poly_; }

  StarElement star() const;
  bool is_symmetric() const;  // f* = f, i.e. f in A_S
  // f = g + i*h with both parts symmetric.
  std::pair<StarElement, StarElement> symmetric_split() const;

 private:
  void require_same(const StarElement& o) const;

  StarSemigroup sg_;
  CPolynomial poly_;
};

StarElement power_2d(const StarElement& f, unsigned d);

template <class Phi>
Rational seminorm_upper(const StarElement& f, const Phi& phi) {
  return seminorm_upper(f.poly(), phi);
}

// Multiplicative *-compatible map S -> C determined by a point: x in R^n
// for the free case, z in C^n for conjugate pairs.
struct Semicharacter {
  StarSemigroup sg;
  std::vector<ComplexQ> z;  // size n

  static Semicharacter real_point(StarSemigroup sg, std::vector<Rational> x);
  static Semicharacter complex_point(StarSemigroup sg, std::vector<ComplexQ> z);

  ComplexQ eval_index(const MultiIndex& s) const;
  ComplexQ eval(const StarElement& f) const;
};

// The five Lemma-style generator families for every s in support:
// norm, real +, real -, imag +, imag -.
std::vector<ModuleGenerator> module_generators(const StarSemigroup& sg,
                                               const std::vector<MultiIndex>& support);

// Generator as an element of A_S. phi must live on the semigroup's exponent
// vectors (arity = index_arity).
StarElement materialize_star(const ModuleGenerator& g, const AbsoluteValue& phi,
                             const StarSemigroup& sg);

}  // namespace cone
