#pragma once

#include <string>
#include <vector>

#include "cone_closure/rational.hpp"

namespace cone {

// Exponent vector in N^n. Also doubles as an element of the free commutative
// monoid (N^n, +), which is how the star-semigroup layer uses it.
struct MultiIndex {
  std::vector<unsigned> e;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e(n, 0) {}
  MultiIndex(std::initializer_list<unsigned> init) : e(init) {}

  std::size_t arity() const { return e.size(); }
  unsigned degree() const;
  bool is_zero() const;
  unsigned operator[](std::size_t i) const { return e[i]; }
  unsigned& operator[](std::size_t i) { return e[i]; }

  bool operator==(const MultiIndex& o) const = default;

  MultiIndex operator+(const MultiIndex& o) const;
  bool leq(const MultiIndex& o) const;          // componentwise
  MultiIndex minus(const MultiIndex& o) const;  // requires o.leq(*this)
  MultiIndex scaled(unsigned k) const;
};

// Total degree first, then lexicographic. Canonical term order everywhere.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_less(a, b);
  }
};

std::string multiindex_str(const MultiIndex& m);            // "e1,e2,...,en"
MultiIndex parse_multiindex(const std::string& s, std::size_t arity);

// All multi-indices of the given arity with total degree <= max_degree,
// in graded lex order.
std::vector<MultiIndex> indices_up_to(std::size_t arity, unsigned max_degree);

}  // namespace cone
