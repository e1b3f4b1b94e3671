#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cone_closure/complexq.hpp"
#include "cone_closure/kernels.hpp"
#include "cone_closure/multiindex.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cone {

// Sparse multivariate polynomial: map from exponent vector to coefficient,
// graded lex order, never stores a zero coefficient. Instantiated with
// Rational (the main ring) and ComplexQ (the star-algebra layer).
template <class C>
class BasicPolynomial {
 public:
  using Terms = std::map<MultiIndex, C, GradedLexLess>;

  explicit BasicPolynomial(std::size_t arity = 0) : arity_(arity) {}

  static BasicPolynomial constant(std::size_t arity, C c) {
    BasicPolynomial p(arity);
    p.add_term(MultiIndex(arity), std::move(c));
    return p;
  }

  static BasicPolynomial term(std::size_t arity, const MultiIndex& m, C c) {
    BasicPolynomial p(arity);
    p.add_term(m, std::move(c));
    return p;
  }

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
  }

  unsigned degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
  }

  C coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C{} : it->second;
  }

  C constant_term() const { return coeff(MultiIndex(arity_)); }

  void add_term(const MultiIndex& m, const C& c) {
    if (m.arity() != arity_) throw UsageError("term arity mismatch");
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    require_same_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    require_same_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) {
    return a += b;
  }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) {
    return a -= b;
  }
  friend BasicPolynomial operator-(const BasicPolynomial& a) {
    BasicPolynomial r(a.arity_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  BasicPolynomial scaled(const Rational& s) const {
    BasicPolynomial r(arity_);
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, coeff_scale(c, s));
    return r;
  }

  bool operator==(const BasicPolynomial& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
  }

  void require_same_arity(const BasicPolynomial& o) const {
    if (arity_ != o.arity_) throw UsageError("polynomial arity mismatch");
  }

 private:
  std::size_t arity_;
  Terms terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using CPolynomial = BasicPolynomial<ComplexQ>;

namespace detail {
// Flattened view used by the multiplication kernels.
template <class C>
std::vector<std::pair<const MultiIndex*, const C*>> flat_terms(const BasicPolynomial<C>& p) {
  std::vector<std::pair<const MultiIndex*, const C*>> v;
  v.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) v.emplace_back(&m, &c);
  return v;
}
}  // namespace detail

template <class C>
BasicPolynomial<C> mul_serial(const BasicPolynomial<C>& a, const BasicPolynomial<C>& b) {
  a.require_same_arity(b);
  BasicPolynomial<C> r(a.arity());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma + mb, ca * cb);
  return r;
}

template <class C>
BasicPolynomial<C> mul_parallel(const BasicPolynomial<C>& a, const BasicPolynomial<C>& b) {
#ifdef _OPENMP
  a.require_same_arity(b);
  const auto fa = detail::flat_terms(a);
  const auto fb = detail::flat_terms(b);
  const int nt = kernels::max_threads();
  std::vector<BasicPolynomial<C>> partial(nt, BasicPolynomial<C>(a.arity()));
#pragma omp parallel num_threads(nt)
  {
    const int tid = omp_get_thread_num();
    BasicPolynomial<C> local(a.arity());
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(fa.size()); ++i)
      for (const auto& [mb, cb] : fb) local.add_term(*fa[i].first + *mb, *fa[i].second * *cb);
    partial[tid] = std::move(local);
  }
  BasicPolynomial<C> r(a.arity());
  for (auto& p : partial) r += p;
  return r;
#else
  return mul_serial(a, b);
#endif
}

template <class C>
BasicPolynomial<C> operator*(const BasicPolynomial<C>& a, const BasicPolynomial<C>& b) {
  constexpr std::size_t kParallelCutoff = 1u << 15;
  if (kernels::max_threads() > 1 && a.term_count() * b.term_count() >= kParallelCutoff)
    return mul_parallel(a, b);
  return mul_serial(a, b);
}

// f^(2d) by binary powering.
template <class C>
BasicPolynomial<C> pow_2d(const BasicPolynomial<C>& f, unsigned d) {
  if (d == 0) throw UsageError("power exponent d must be positive");
  unsigned e = 2 * d;
  BasicPolynomial<C> base = f;
  BasicPolynomial<C> r = BasicPolynomial<C>::constant(f.arity(), C{Rational(1)});
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

inline Rational evaluate(const Polynomial& f, const std::vector<Rational>& x) {
  if (x.size() != f.arity()) throw UsageError("evaluation point arity mismatch");
  Rational acc = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (m[i]) t *= qpow(x[i], m[i]);
    acc += t;
  }
  return acc;
}

inline ComplexQ evaluate(const CPolynomial& f, const std::vector<ComplexQ>& z) {
  if (z.size() != f.arity()) throw UsageError("evaluation point arity mismatch");
  ComplexQ acc;
  for (const auto& [m, c] : f.terms()) {
    ComplexQ t = c;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (m[i]) t = t * cpow(z[i], m[i]);
    acc += t;
  }
  return acc;
}

inline double evaluate_double(const Polynomial& f, const std::vector<double>& x) {
  if (x.size() != f.arity()) throw UsageError("evaluation point arity mismatch");
  double acc = 0;
  for (const auto& [m, c] : f.terms()) {
    double t = to_double(c);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (unsigned k = 0; k < m[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

// Real polynomial embedded into the complex-coefficient ring.
inline CPolynomial complexify(const Polynomial& f) {
  CPolynomial r(f.arity());
  for (const auto& [m, c] : f.terms()) r.add_term(m, ComplexQ(c));
  return r;
}

}  // namespace cone
