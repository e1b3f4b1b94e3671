#include "cone_closure/moments.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cone_closure/numeric.hpp"
#include "cone_closure/rng.hpp"

namespace cone {

MomentFunctional::MomentFunctional(StarSemigroup sg, Table values, unsigned degree)
    : sg_(sg), vals_(std::move(values)), degree_(degree) {
  for (const auto& [s, v] : vals_) {
    if (s.arity() != sg_.index_arity())
      throw UsageError("moment index arity mismatch at " + multiindex_str(s));
    if (s.degree() > degree_)
      throw UsageError("moment index " + multiindex_str(s) + " exceeds the degree bound");
  }
  std::vector<std::pair<MultiIndex, ComplexQ>> fill;
  for (const auto& [s, v] : vals_) {
    const MultiIndex st = sg_.star(s);
    const auto it = vals_.find(st);
    if (it == vals_.end())
      fill.emplace_back(st, v.conj());
    else if (!(it->second == v.conj()))
      throw UsageError("moment table is not *-consistent at " + multiindex_str(s));
  }
  for (auto& [s, v] : fill) vals_.emplace(std::move(s), v);
  const auto it0 = vals_.find(sg_.neutral());
  if (it0 != vals_.end() && (!it0->second.is_real() || it0->second.re < 0))
    throw UsageError("the mass L(1) must be real and nonnegative");
}

ComplexQ MomentFunctional::operator()(const MultiIndex& s) const {
  const auto it = vals_.find(s);
  if (it == vals_.end()) throw DomainError("no moment stored for index " + multiindex_str(s));
  return it->second;
}

ComplexQ MomentFunctional::apply(const StarElement& f) const {
  ComplexQ acc;
  for (const auto& [s, c] : f.poly().terms()) {
    if (coeff_is_zero(c)) continue;
    const auto it = vals_.find(s);
    if (it == vals_.end())
      throw UsageError("element overflows the moment table at index " + multiindex_str(s));
    acc += c * it->second;
  }
  return acc;
}

Rational DiscreteMeasure::mass() const {
  Rational m(0);
  for (const auto& [w, a] : atoms) m += w;
  return m;
}

DiscreteMeasure DiscreteMeasure::checked(StarSemigroup sg,
                                         std::vector<std::pair<Rational, Semicharacter>> atoms,
                                         const AbsoluteValue& phi, unsigned depth) {
  if (phi.arity() != sg.index_arity())
    throw UsageError("weight arity does not match the semigroup index space");
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const auto& [w, a] = atoms[j];
    if (!(w > 0)) throw UsageError("atom " + std::to_string(j + 1) + " has nonpositive weight");
    if (!(a.sg == sg)) throw UsageError("atom " + std::to_string(j + 1) + " lives on a different semigroup");
    KphiResult k;
    if (sg.kind == StarSemigroup::Kind::conjugate_pair) {
      // alpha_z(p|q) = z^p conj(z)^q, which is exactly the complex membership test.
      k = kphi_membership_complex(a.z, phi, depth);
    } else {
      // Free-commutative semicharacters are real points.
      std::vector<Rational> x;
      x.reserve(a.z.size());
      for (const ComplexQ& c : a.z) {
        if (!(c.im == 0))
          throw UsageError("atom " + std::to_string(j + 1) +
                           " has a complex coordinate on a real semigroup");
        x.push_back(c.re);
      }
      k = kphi_membership(x, phi, depth);
    }
    if (!k.inside)
      throw UsageError("atom " + std::to_string(j + 1) +
                       " violates the weight bound at index " + multiindex_str(k.witness));
  }
  DiscreteMeasure mu;
  mu.sg = sg;
  mu.atoms = std::move(atoms);
  return mu;
}

MomentFunctional functional_from_measure(const DiscreteMeasure& mu, unsigned degree) {
  MomentFunctional::Table vals;
  for (const MultiIndex& s : indices_up_to(mu.sg.index_arity(), degree)) {
    ComplexQ acc;
    for (const auto& [w, a] : mu.atoms) acc += ComplexQ(w) * a.eval_index(s);
    vals.emplace(s, acc);
  }
  return MomentFunctional(mu.sg, std::move(vals), degree);
}

namespace {

// Exact Hermitian form value L(p p*) for p = sum coeffs[k] X^{basis[k]}.
ComplexQ hermitian_value(const MomentFunctional& L, const std::vector<MultiIndex>& basis,
                         const std::vector<ComplexQ>& coeffs) {
  ComplexQ acc;
  const StarSemigroup& sg = L.semigroup();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (coeffs[j].is_zero()) continue;
      acc += coeffs[i] * coeffs[j].conj() * L(basis[i] + sg.star(basis[j]));
    }
  }
  return acc;
}

}  // namespace

HankelResult hankel_psd_check(const MomentFunctional& L, unsigned degree, double tol) {
  if (2 * degree > L.degree())
    throw UsageError("Hankel degree " + std::to_string(degree) +
                     " needs moments up to " + std::to_string(2 * degree) +
                     ", beyond the table bound " + std::to_string(L.degree()));
  const std::vector<MultiIndex> basis = indices_up_to(L.semigroup().index_arity(), degree);
  const std::size_t m = basis.size();

  // real embedding of the Hermitian matrix: [[Re, -Im], [Im, Re]]
  SymMat em(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const ComplexQ h = L(basis[i] + L.semigroup().star(basis[j]));
      const double re = to_double(h.re);
      const double im = to_double(h.im);
      em.set_sym(i, j, re);
      em.set_sym(m + i, m + j, re);
      em.at(i, m + j) = -im;
      em.at(m + j, i) = -im;
      em.at(j, m + i) = im;
      em.at(m + i, j) = im;
    }
  }
  const EigenDecomposition eig = jacobi_eigen(em);
  const double min_eig = eig.values.empty() ? 0.0 : eig.values.front();
  if (min_eig >= -tol) return HankelPsd{min_eig};

  // candidate witness from the most negative direction, scaled so the
  // largest modulus is 1, then rationalized and rechecked exactly
  std::vector<double> u(m), w(m);
  double mag = 0;
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = eig.vectors.at(i, 0);
    w[i] = eig.vectors.at(m + i, 0);
    mag = std::max(mag, std::hypot(u[i], w[i]));
  }
  if (mag > 0)
    for (std::size_t i = 0; i < m; ++i) {
      u[i] /= mag;
      w[i] /= mag;
    }
  const std::uint64_t dens[] = {std::uint64_t(1) << 16, std::uint64_t(1) << 32, 0};
  for (const std::uint64_t den : dens) {
    std::vector<ComplexQ> coeffs(m);
    for (std::size_t i = 0; i < m; ++i)
      coeffs[i] = den ? ComplexQ(cf_round(u[i], den), cf_round(w[i], den))
                      : ComplexQ(Rational(u[i]), Rational(w[i]));
    const ComplexQ val = hermitian_value(L, basis, coeffs);
    if (val.is_real() && val.re < 0)
      return HankelWitness{min_eig, basis, std::move(coeffs), val.re};
  }
  // no exact negative direction survived rationalization; report the exact
  // verdict rather than the numeric one
  return HankelPsd{min_eig};
}

MomentConditionReport moment_condition_check(const MomentFunctional& L, const AbsoluteValue& phi,
                                             const Rational& C, unsigned d,
                                             const std::vector<StarElement>& probes,
                                             const MomentCheckOptions& opts) {
  if (d == 0) throw UsageError("power exponent must be at least 1");
  if (phi.arity() != L.semigroup().index_arity())
    throw UsageError("weight arity does not match the moment table");
  MomentConditionReport rep;

  for (const auto& [s, v] : L.values()) {
    if (phi.kind() == PhiKind::table && !phi.has_entry(s)) continue;
    const Rational bound = C * phi(s);
    if (v.norm_sq() > bound * bound) {
      rep.bound_ok = false;
      rep.detail = "|L| exceeds C*phi at index " + multiindex_str(s);
      break;
    }
  }

  const StarSemigroup& sg = L.semigroup();
  std::vector<StarElement> all = probes;
  {
    const unsigned pdeg = opts.probe_degree ? opts.probe_degree
                                            : L.degree() / (2 * d);
    const std::vector<MultiIndex> pool = indices_up_to(sg.index_arity(), pdeg);
    Rng rng(opts.seed);
    for (unsigned k = 0; k < opts.random_probes; ++k) {
      StarElement p(sg);
      const unsigned nterms = static_cast<unsigned>(rng.range(1, 3));
      for (unsigned t = 0; t < nterms; ++t) {
        const MultiIndex& s = pool[static_cast<std::size_t>(rng.below(pool.size()))];
        p.add_term(s, ComplexQ(rng.rational(2, 6)));
      }
      p += p.star();  // symmetric probe
      all.push_back(std::move(p));
    }
  }
  for (const StarElement& p : all) {
    const ComplexQ val = L.apply(power_2d(p, d));
    if (!val.is_real() || val.re < -opts.power_tol) {
      rep.power_ok = false;
      rep.detail = rep.detail.empty() ? "a probe power evaluates negative" : rep.detail;
      break;
    }
  }

  std::vector<MultiIndex> domain;
  domain.reserve(L.values().size());
  for (const auto& [s, v] : L.values()) domain.push_back(s);
  for (std::size_t i = 0; i < domain.size() && rep.cs_ok; ++i) {
    for (std::size_t j = i; j < domain.size(); ++j) {
      const MultiIndex& s = domain[i];
      const MultiIndex& t = domain[j];
      if (!L.has(s + sg.star(t)) || !L.has(s + sg.star(s)) || !L.has(t + sg.star(t))) continue;
      const Rational lhs = L(s + sg.star(t)).norm_sq();
      const ComplexQ ss = L(s + sg.star(s));
      const ComplexQ tt = L(t + sg.star(t));
      if (!ss.is_real() || !tt.is_real() || lhs > ss.re * tt.re) {
        rep.cs_ok = false;
        if (rep.detail.empty())
          rep.detail = "Cauchy-Schwarz fails at (" + multiindex_str(s) + ", " +
                       multiindex_str(t) + ")";
        break;
      }
    }
  }
  return rep;
}

}  // namespace cone
