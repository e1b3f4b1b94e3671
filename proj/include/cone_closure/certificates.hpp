#pragma once

#include <utility>
#include <vector>

#include "cone_closure/dyadic.hpp"
#include "cone_closure/generators.hpp"
#include "cone_closure/polynomial.hpp"
#include "cone_closure/root_series.hpp"
#include "cone_closure/star_semigroup.hpp"
#include "cone_closure/weights.hpp"

namespace cone {

// sum_j c_j h_j^(2d) with c_j >= 0. Constant bases are exponent-agnostic;
// everything else is tied to this d.
template <class E>
struct SumOfPowersT {
  unsigned d = 1;
  std::vector<std::pair<Rational, E>> entries;
};

// Module-membership witness: f + slack/2 = sum_i g_i m_i + residual, with
// ||residual||_phi <= slack/4.
template <class E>
struct CertificateT {
  E target;
  Rational slack;
  std::vector<std::pair<SumOfPowersT<E>, ModuleGenerator>> pairs;
  E residual;
};

using SumOfPowers = SumOfPowersT<Polynomial>;
using Certificate = CertificateT<Polynomial>;
using StarSumOfPowers = SumOfPowersT<StarElement>;
using StarCertificate = CertificateT<StarElement>;

struct NotDiagonallyDominant : DomainError {
  explicit NotDiagonallyDominant(Rational deficit_)
      : DomainError("constant coefficient falls short of the weighted off-diagonal mass by " +
                    rational_str(deficit_)),
        deficit(std::move(deficit_)) {}
  Rational deficit;
};

struct CompilationOverflow : DomainError {
  CompilationOverflow(Rational achieved_, unsigned order_)
      : DomainError("compilation exceeded its truncation budget; best gap " +
                    rational_str(achieved_)),
        achieved(std::move(achieved_)),
        order(order_) {}
  Rational achieved;
  unsigned order;
};

template <class E>
struct VerifyResult {
  bool valid = false;
  bool structure_ok = false;  // slack, weights, generator constants, base symmetry
  bool identity_ok = false;
  bool residual_ok = false;
  Rational residual_norm;
  E discrepancy;  // (f + slack/2) - (sum g_i m_i + residual)
};

template <class E>
struct CompileResult {
  SumOfPowersT<E> g;
  Rational certified_gap;  // exact ||f - materialize(g)||_phi (upper bound for
                           // complex coefficients without rational modulus)
  Rational delta;          // per-generator series budget used
  unsigned max_order = 0;  // largest truncation order across generators
};

// Shared helpers so the certificate pipeline is one template over both the
// polynomial ring and the semigroup algebra.
inline Polynomial zero_like(const Polynomial& f) { return Polynomial(f.arity()); }
inline StarElement zero_like(const StarElement& f) { return StarElement(f.semigroup()); }
inline Polynomial constant_like(const Polynomial& f, const Rational& c) {
  return Polynomial::constant(f.arity(), c);
}
inline StarElement constant_like(const StarElement& f, const Rational& c) {
  return StarElement::constant(f.semigroup(), ComplexQ(c));
}
inline Polynomial rscaled(const Polynomial& f, const Rational& c) { return f.scaled(c); }
inline StarElement rscaled(const StarElement& f, const Rational& c) {
  return f.scaled(ComplexQ(c));
}
inline Polynomial pow2d_of(const Polynomial& f, unsigned d) {
  // Supports on a single ray power through the packed integer convolution;
  // the density guard keeps sparse high-degree inputs off the dense vector.
  if (d > 0 && !f.is_zero()) {
    std::vector<MultiIndex> exps;
    exps.reserve(f.term_count());
    for (const auto& [m, c] : f.terms()) exps.push_back(m);
    MultiIndex dir(f.arity());
    ScaledVec v;
    if (common_direction(exps, dir) && poly_to_svec(f, dir, v) &&
        v.num.size() <= 64 * f.term_count() + 64)
      return svec_to_poly(svec_pow(v, 2 * d), f.arity(), dir);
  }
  return pow_2d(f, d);
}
inline StarElement pow2d_of(const StarElement& f, unsigned d) { return power_2d(f, d); }
inline Rational norm_upper(const Polynomial& f, const AbsoluteValue& phi) {
  return seminorm(f, phi);
}
inline Rational norm_upper(const StarElement& f, const AbsoluteValue& phi) {
  return seminorm_upper(f, phi);
}
inline bool is_constant_elem(const Polynomial& f) { return f.is_constant(); }
inline bool is_constant_elem(const StarElement& f) { return f.poly().is_constant(); }

Polynomial materialize_generator(const ModuleGenerator& g, const AbsoluteValue& phi,
                                 const Polynomial& like);
inline StarElement materialize_generator(const ModuleGenerator& g, const AbsoluteValue& phi,
                                         const StarElement& like) {
  return materialize_star(g, phi, like.semigroup());
}

template <class E>
E materialize(const SumOfPowersT<E>& s, const E& like) {
  E acc = zero_like(like);
  for (const auto& [c, h] : s.entries) acc += rscaled(pow2d_of(h, s.d), c);
  return acc;
}

// Archimedean-display certificate: needs the constant coefficient to cover
// the weighted mass of the other terms (plus slack/2). Exact, residual 0.
Certificate trivial_certificate(const Polynomial& f, const AbsoluteValue& phi,
                                const Rational& eps);
StarCertificate trivial_certificate(const StarElement& f, const AbsoluteValue& phi,
                                    const Rational& eps);

VerifyResult<Polynomial> verify_certificate(const Certificate& c, const AbsoluteValue& phi);
VerifyResult<StarElement> verify_certificate(const StarCertificate& c, const AbsoluteValue& phi);

// Certificate -> sum of 2d-powers with an exactly verified seminorm gap
// <= slack. bits = 0 uses the configured series precision.
CompileResult<Polynomial> compile(const Certificate& c, const AbsoluteValue& phi, unsigned d,
                                  unsigned bits = 0);
CompileResult<StarElement> compile(const StarCertificate& c, const AbsoluteValue& phi, unsigned d,
                                   unsigned bits = 0);

// max(0, max_j -f(x_j)) over points of the degree-checked outer set; a lower
// bound on the seminorm distance from f to the cone of 2d-powers.
Rational distance_lower_bound(const Polynomial& f, const std::vector<std::vector<Rational>>& points,
                              const AbsoluteValue& phi, unsigned depth);

// Recomputes the gap from the shipped sum alone, bypassing the compiler's
// defect bookkeeping.
template <class E>
Rational recompute_gap(const E& f, const SumOfPowersT<E>& g, const AbsoluteValue& phi) {
  return norm_upper(f - materialize(g, f), phi);
}

}  // namespace cone
