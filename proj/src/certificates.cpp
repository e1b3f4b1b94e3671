#include "cone_closure/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace cone {

Polynomial materialize_generator(const ModuleGenerator& g, const AbsoluteValue& phi,
                                 const Polynomial& like) {
  const std::size_t n = like.arity();
  switch (g.kind) {
    case ModuleGenerator::Kind::one:
      return Polynomial::constant(n, Rational(1));
    case ModuleGenerator::Kind::poly: {
      Polynomial m = Polynomial::constant(n, g.rho);
      m.add_term(g.s, Rational(g.sign));
      return m;
    }
    // The semigroup families read through the trivial involution s* = s.
    case ModuleGenerator::Kind::sg_norm: {
      const Rational p = phi(g.s);
      Polynomial m = Polynomial::constant(n, p * p);
      m.add_term(g.s + g.s, Rational(-1));
      return m;
    }
    case ModuleGenerator::Kind::sg_real: {
      Polynomial m = Polynomial::constant(n, 2 * phi(g.s));
      m.add_term(g.s, Rational(2 * g.sign));
      return m;
    }
    case ModuleGenerator::Kind::sg_imag:
      return Polynomial::constant(n, 2 * phi(g.s));
  }
  throw DomainError("unreachable generator kind");
}

namespace {

bool is_zero_elem(const Polynomial& f) {
  for (const auto& [s, c] : f.terms())
    if (!(c == 0)) return false;
  return true;
}

bool is_zero_elem(const StarElement& f) {
  for (const auto& [s, c] : f.poly().terms())
    if (!coeff_is_zero(c)) return false;
  return true;
}

bool is_symmetric_elem(const Polynomial&) { return true; }
bool is_symmetric_elem(const StarElement& f) { return f.is_symmetric(); }

Rational const_value(const Polynomial& f) { return f.constant_term(); }
Rational const_value(const StarElement& f) {
  const ComplexQ c = f.constant_term();
  if (!(c.im == 0)) throw DomainError("constant part of a symmetric element must be real");
  return c.re;
}

bool generator_admissible(const ModuleGenerator& g, const AbsoluteValue& phi) {
  if (g.kind == ModuleGenerator::Kind::poly) return !(g.rho < phi(g.s));
  return true;
}

template <class E>
VerifyResult<E> verify_impl(const CertificateT<E>& c, const AbsoluteValue& phi) {
  bool structure = !(c.slack < 0);
  if (!is_symmetric_elem(c.target) || !is_symmetric_elem(c.residual)) structure = false;
  E acc = zero_like(c.target);
  for (const auto& [g, mg] : c.pairs) {
    if (!generator_admissible(mg, phi)) structure = false;
    if (g.d == 0) {
      structure = false;
      continue;
    }
    for (const auto& [w, h] : g.entries) {
      if (w < 0) structure = false;
      if (!is_symmetric_elem(h)) structure = false;
    }
    acc += materialize(g, c.target) * materialize_generator(mg, phi, c.target);
  }
  acc += c.residual;
  VerifyResult<E> r{false, false, false, false, Rational(0),
                    (c.target + constant_like(c.target, c.slack / 2)) - acc};
  r.identity_ok = is_zero_elem(r.discrepancy);
  r.residual_norm = norm_upper(c.residual, phi);
  r.residual_ok = !(r.residual_norm > c.slack / 4);
  r.structure_ok = structure;
  r.valid = r.structure_ok && r.identity_ok && r.residual_ok;
  return r;
}

// Single nonzero term with integer coefficient: the series in that term can
// be powered as one integer convolution instead of polynomial products.
struct FastTerm {
  bool single = false;
  MultiIndex dir;
  Int coeff;
};

FastTerm fast_term(const Polynomial& fpart) {
  FastTerm t;
  if (fpart.terms().size() != 1) return t;
  const auto& [s, c] = *fpart.terms().begin();
  if (s.is_zero() || den(c) != 1) return t;
  t.single = true;
  t.dir = s;
  t.coeff = num(c);
  return t;
}

FastTerm fast_term(const StarElement& fpart) {
  FastTerm t;
  const auto& tm = fpart.poly().terms();
  if (tm.size() != 1) return t;
  const auto& [s, c] = *tm.begin();
  if (s.is_zero() || !(c.im == 0) || den(c.re) != 1) return t;
  if (!(fpart.semigroup().star(s) == s)) return t;  // keep the base symmetric
  t.single = true;
  t.dir = s;
  t.coeff = num(c.re);
  return t;
}

Polynomial from_svec_elem(const ScaledVec& v, const Polynomial& like, const MultiIndex& dir) {
  return svec_to_poly(v, like.arity(), dir);
}

StarElement from_svec_elem(const ScaledVec& v, const StarElement& like, const MultiIndex& dir) {
  StarElement h(like.semigroup());
  for (std::size_t k = 0; k < v.num.size(); ++k) {
    if (v.num[k] == 0) continue;
    h.add_term(dir.scaled(static_cast<unsigned>(k)), ComplexQ(v.at(k)));
  }
  return h;
}

unsigned effective_bits(unsigned bits, const Rational& delta) {
  if (delta <= 0 || delta >= 1) return bits;
  const unsigned nb = static_cast<unsigned>(boost::multiprecision::msb(num(delta)));
  const unsigned db = static_cast<unsigned>(boost::multiprecision::msb(den(delta)));
  const unsigned need = (db > nb ? db - nb : 0) + 48;
  return std::min(std::max(bits, need), 4096u);
}

template <class E>
struct CompiledGen {
  E h;
  E defect;  // m - h^(2d), exact
  unsigned order = 0;
};

constexpr unsigned kSeriesCap = 1000000;

// Truncated 2d-th root of one generator: h with ||m - h^(2d)||_phi <= delta.
template <class E>
CompiledGen<E> compile_generator(const E& m, const AbsoluteValue& phi, unsigned d,
                                 const Rational& delta, const Rational& phi0, unsigned bits) {
  const Rational r0 = const_value(m);
  const E fpart = m - constant_like(m, r0);
  const Rational w = norm_upper(fpart, phi);
  // The shift keeps the series strictly inside its disk of convergence and
  // costs delta/2 of the budget at index 0.
  const Rational r = r0 + delta / (2 * phi0);
  if (!(w < r))
    throw DomainError("power series for a generator diverges: off-constant mass " +
                      rational_str(w) + " is not below the shifted radius " + rational_str(r));
  // Initial truncation target; the exact defect check below is what decides.
  const Rational tau = delta / (8 * Rational(d) * qmax(Rational(1), r));
  unsigned xbits = bits;
  if (w > 1) {
    // The coefficient grid carries an absolute error near 2^-bits, and the
    // tail bound multiplies it by w^N, so the requested precision has to
    // scale with the order the series needs, not just with tau.
    const double lr = std::log2(to_double(r / w));
    const double orders = (std::log2(to_double(qmax(Rational(1), r) / tau)) +
                           std::log2(to_double(r / (r - w))) + 16.0) /
                          std::max(lr, 1e-6);
    const double extra = orders * std::log2(to_double(w)) + 64.0;
    if (extra > 0 && std::isfinite(extra))
      xbits = std::max(xbits, std::min(static_cast<unsigned>(bits + extra), 65536u));
  }
  const FastTerm ft = fast_term(fpart);
  RootExpansion ex = [&] {
    try {
      return expand_root_auto(r, +1, d, w, tau, xbits, kSeriesCap);
    } catch (const TruncationCapReached& t) {
      throw CompilationOverflow(t.achieved, t.order);
    }
  }();
  for (;;) {
    E h = zero_like(m);
    E hpow = zero_like(m);
    if (ft.single) {
      ScaledVec v = ex.to_svec();
      Int up(1);
      for (std::size_t k = 0; k < v.num.size(); ++k) {
        v.num[k] *= up;
        up *= ft.coeff;
      }
      v.trim();
      h = from_svec_elem(v, m, ft.dir);
      hpow = from_svec_elem(svec_pow(v, 2 * d), m, ft.dir);
    } else {
      h = constant_like(m, ex.coeff(ex.order()));
      for (unsigned k = ex.order(); k-- > 0;) {
        h = h * fpart;
        h += constant_like(m, ex.coeff(k));
      }
      hpow = pow2d_of(h, d);
    }
    E defect = m - hpow;
    const Rational dn = norm_upper(defect, phi);
    if (!(dn > delta)) return {std::move(h), std::move(defect), ex.order()};
    if (ex.order() >= kSeriesCap) throw CompilationOverflow(dn, ex.order());
    extend_to(ex, std::min<unsigned>(ex.order() + ex.order() * 3 / 10 + 8, kSeriesCap));
  }
}

template <class E>
CompileResult<E> compile_impl(const CertificateT<E>& cert, const AbsoluteValue& phi, unsigned d,
                              unsigned bits) {
  if (d == 0) throw UsageError("power exponent must be at least 1");
  if (bits == 0) bits = default_precision_bits();
  if (!verify_impl(cert, phi).valid)
    throw UsageError("certificate does not verify; refusing to compile it");

  const Rational phi0 = phi(MultiIndex(phi.arity()));
  const Rational eps = cert.slack;

  const auto exponent_guard = [&](unsigned gd) {
    if (gd != d)
      throw UsageError("multiplier uses exponent 2*" + std::to_string(gd) +
                       " but compilation targets 2*" + std::to_string(d));
  };

  struct Staged {
    E mult;
    E m;
    const SumOfPowersT<E>* g;
  };
  std::vector<Staged> series;
  Rational const_weight(0);
  std::vector<std::pair<Rational, E>> direct;
  Rational norm_sum(0);

  for (const auto& [g, mg] : cert.pairs) {
    E m = materialize_generator(mg, phi, cert.target);
    E mult = materialize(g, cert.target);
    if (is_zero_elem(mult)) continue;
    if (is_constant_elem(m)) {
      const Rational gamma = const_value(m);
      if (gamma < 0) throw UsageError("constant generator is negative");
      if (gamma == 0) continue;
      for (const auto& [c, h] : g.entries) {
        if (c == 0) continue;
        if (is_constant_elem(h)) {
          const_weight += c * gamma * qpow(const_value(h), 2 * g.d);
        } else {
          exponent_guard(g.d);
          direct.emplace_back(c * gamma, h);
        }
      }
    } else {
      norm_sum += norm_upper(mult, phi);
      series.push_back({std::move(mult), std::move(m), &g});
    }
  }

  CompileResult<E> res;
  res.g.d = d;
  if (!series.empty()) {
    if (eps == 0)
      throw UsageError("compiling a certificate with nonconstant generators needs positive slack");
    res.delta = (eps / 4) / norm_sum;
  }
  const unsigned ebits = effective_bits(bits, res.delta);

  std::vector<std::pair<Rational, E>> powered;
  std::vector<E> defects;
  defects.reserve(series.size());
  for (const auto& sp : series) {
    CompiledGen<E> cg = compile_generator(sp.m, phi, d, res.delta, phi0, ebits);
    res.max_order = std::max(res.max_order, cg.order);
    for (const auto& [c, h] : sp.g->entries) {
      if (c == 0) continue;
      if (is_constant_elem(h)) {
        const Rational hv = const_value(h);
        if (hv == 0) continue;
        powered.emplace_back(c * qpow(hv, 2 * sp.g->d), cg.h);
      } else {
        exponent_guard(sp.g->d);
        powered.emplace_back(c, h * cg.h);
      }
    }
    defects.push_back(std::move(cg.defect));
  }

  if (const_weight > 0)
    res.g.entries.emplace_back(const_weight, constant_like(cert.target, Rational(1)));
  for (auto& e : direct) res.g.entries.push_back(std::move(e));
  for (auto& e : powered) res.g.entries.push_back(std::move(e));

  // Exact: f - materialize(res.g) = sum_i mult_i * defect_i + residual - eps/2.
  E gap = cert.residual - constant_like(cert.target, eps / 2);
  for (std::size_t i = 0; i < series.size(); ++i) gap += series[i].mult * defects[i];
  res.certified_gap = norm_upper(gap, phi);
  if (res.certified_gap > eps) throw CompilationOverflow(res.certified_gap, res.max_order);
  return res;
}

}  // namespace

Certificate trivial_certificate(const Polynomial& f, const AbsoluteValue& phi,
                                const Rational& eps) {
  if (eps < 0) throw UsageError("slack must be nonnegative");
  if (f.arity() != phi.arity()) throw UsageError("weight arity does not match the polynomial");
  const std::size_t n = f.arity();
  Rational off(0);
  for (const auto& [s, c] : f.terms()) {
    if (s.is_zero() || c == 0) continue;
    off += qabs(c) * phi(s);
  }
  const Rational head = f.constant_term() + eps / 2 - off;
  if (head < 0) throw NotDiagonallyDominant(-head);

  const auto unit_sq = [n](const Rational& wq) {
    SumOfPowers g;
    g.d = 1;
    g.entries.emplace_back(wq, Polynomial::constant(n, Rational(1)));
    return g;
  };
  Certificate cert{f, eps, {}, Polynomial(n)};
  if (head > 0) cert.pairs.emplace_back(unit_sq(head), ModuleGenerator::constant_one());
  for (const auto& [s, c] : f.terms()) {
    if (s.is_zero() || c == 0) continue;
    cert.pairs.emplace_back(unit_sq(qabs(c)),
                            ModuleGenerator::poly_case(phi(s), c > 0 ? 1 : -1, s));
  }
  return cert;
}

StarCertificate trivial_certificate(const StarElement& f, const AbsoluteValue& phi,
                                    const Rational& eps) {
  if (eps < 0) throw UsageError("slack must be nonnegative");
  const StarSemigroup sg = f.semigroup();
  if (phi.arity() != sg.index_arity())
    throw UsageError("weight arity does not match the semigroup index space");
  if (!f.is_symmetric()) throw UsageError("target must be self-adjoint");

  const auto unit_sq = [&sg](const Rational& wq) {
    StarSumOfPowers g;
    g.d = 1;
    g.entries.emplace_back(wq, StarElement::constant(sg, ComplexQ(Rational(1))));
    return g;
  };
  std::vector<std::pair<StarSumOfPowers, ModuleGenerator>> pairs;
  Rational cost(0);
  for (const auto& [s, c] : f.poly().terms()) {
    if (s.is_zero() || coeff_is_zero(c)) continue;
    const MultiIndex st = sg.star(s);
    if (graded_lex_less(st, s)) continue;  // orbit handled at its representative
    if (st == s) {
      // self-adjoint index, so the coefficient is real
      const Rational a = c.re;
      if (a == 0) continue;
      pairs.emplace_back(unit_sq(qabs(a) / 2), ModuleGenerator::real_case(s, a > 0 ? 1 : -1));
      cost += qabs(a) * phi(s);
    } else {
      if (!(c.re == 0)) {
        pairs.emplace_back(unit_sq(qabs(c.re)),
                           ModuleGenerator::real_case(s, c.re > 0 ? 1 : -1));
        cost += 2 * qabs(c.re) * phi(s);
      }
      if (!(c.im == 0)) {
        pairs.emplace_back(unit_sq(qabs(c.im)),
                           ModuleGenerator::imag_case(s, c.im > 0 ? 1 : -1));
        cost += 2 * qabs(c.im) * phi(s);
      }
    }
  }
  const Rational head = f.constant_term().re + eps / 2 - cost;
  if (head < 0) throw NotDiagonallyDominant(-head);
  if (head > 0)
    pairs.insert(pairs.begin(), {unit_sq(head), ModuleGenerator::constant_one()});
  return StarCertificate{f, eps, std::move(pairs), StarElement(sg)};
}

VerifyResult<Polynomial> verify_certificate(const Certificate& c, const AbsoluteValue& phi) {
  return verify_impl(c, phi);
}

VerifyResult<StarElement> verify_certificate(const StarCertificate& c, const AbsoluteValue& phi) {
  return verify_impl(c, phi);
}

CompileResult<Polynomial> compile(const Certificate& c, const AbsoluteValue& phi, unsigned d,
                                  unsigned bits) {
  return compile_impl(c, phi, d, bits);
}

CompileResult<StarElement> compile(const StarCertificate& c, const AbsoluteValue& phi, unsigned d,
                                   unsigned bits) {
  return compile_impl(c, phi, d, bits);
}

Rational distance_lower_bound(const Polynomial& f, const std::vector<std::vector<Rational>>& points,
                              const AbsoluteValue& phi, unsigned depth) {
  Rational lb(0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const KphiResult k = kphi_membership(points[j], phi, depth);
    if (!k.inside)
      throw UsageError("point " + std::to_string(j + 1) + " violates the weight bound at index " +
                       multiindex_str(k.witness));
    lb = qmax(lb, -evaluate(f, points[j]));
  }
  return lb;
}

}  // namespace cone
