// Acceptance gate: every release criterion in one binary, one verdict line
// each, nonzero exit if anything fails. Runs from ctest but is also meant to
// be read as the contract of what this library promises.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cone_closure/certificates.hpp"
#include "cone_closure/gram_solver.hpp"
#include "cone_closure/identity_lab.hpp"
#include "cone_closure/moments.hpp"
#include "cone_closure/polynomial.hpp"
#include "cone_closure/rng.hpp"
#include "cone_closure/root_series.hpp"
#include "cone_closure/star_semigroup.hpp"
#include "cone_closure/weights.hpp"

using namespace cone;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

MultiIndex mi(std::vector<unsigned> e) {
  MultiIndex m(e.size());
  m.e = std::move(e);
  return m;
}

Polynomial upoly(std::vector<std::pair<unsigned, Rational>> terms) {
  Polynomial f(1);
  for (auto& [e, c] : terms) f.add_term(mi({e}), c);
  return f;
}

std::string rstr(const Rational& q) { return rational_str(q); }

// ---------------------------------------------------------------------------
// 1. Closure pipeline: trivial certificate + compilation reaches every
//    requested gap, with the gap recomputed through an independent path.

bool closure_pipeline(std::string& detail) {
  const AbsoluteValue phi = AbsoluteValue::one(1);
  const Polynomial f = upoly({{0, Rational(1)}, {1, Rational(-1)}});
  const Rational epss[] = {ratio(1, 2), ratio(1, 10), ratio(1, 100)};
  for (unsigned d = 1; d <= 3; ++d) {
    for (const Rational& eps : epss) {
      const auto t0 = Clock::now();
      const Certificate c = trivial_certificate(f, phi, eps);
      if (!verify_certificate(c, phi).valid) {
        detail = "certificate for 1-x rejected at eps=" + rstr(eps);
        return false;
      }
      const auto res = compile(c, phi, d);
      if (!(res.certified_gap <= eps)) {
        detail = "gap " + rstr(res.certified_gap) + " > eps " + rstr(eps) +
                 " at d=" + std::to_string(d);
        return false;
      }
      if (!(recompute_gap(f, res.g, phi) == res.certified_gap)) {
        detail = "recomputed gap disagrees at d=" + std::to_string(d) + " eps=" + rstr(eps);
        return false;
      }
      const double secs = seconds_since(t0);
      if (secs >= 10.0) {
        detail = "run took " + std::to_string(secs) + "s at d=" + std::to_string(d);
        return false;
      }
    }
  }
  const Polynomial f2 = upoly({{0, Rational(1)}, {2, Rational(-1)}});
  const auto t0 = Clock::now();
  const Certificate c2 = trivial_certificate(f2, phi, ratio(1, 10));
  const auto res2 = compile(c2, phi, 2);
  if (!verify_certificate(c2, phi).valid || !(res2.certified_gap <= ratio(1, 10)) ||
      !(recompute_gap(f2, res2.g, phi) == res2.certified_gap)) {
    detail = "1-x^2 at d=2 eps=1/10 failed";
    return false;
  }
  if (seconds_since(t0) >= 10.0) {
    detail = "1-x^2 run exceeded 10s";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2. Boundary sanity: -x sits at seminorm distance >= 1 from the cone, no
//    certificate with slack < 2 survives verification, and certified gaps
//    never dip below a sampled distance lower bound.

bool boundary_sanity(std::string& detail) {
  const AbsoluteValue phi = AbsoluteValue::one(1);
  const Polynomial minus_x = upoly({{1, Rational(-1)}});
  if (!(distance_lower_bound(minus_x, {{Rational(1)}}, phi, 2) == Rational(1))) {
    detail = "distance lower bound at x=1 is not exactly 1";
    return false;
  }

  const Polynomial one_c = Polynomial::constant(1, Rational(1));
  const auto cpair = [&](const Rational& w, const ModuleGenerator& g) {
    SumOfPowers s;
    s.d = 1;
    s.entries.emplace_back(w, one_c);
    return std::make_pair(s, g);
  };
  // Three forgeries with slack 1 < 2: a broken identity, an exact identity
  // bought with a negative weight, and an exact identity whose generator
  // constant undercuts phi.
  std::vector<Certificate> forged;
  forged.push_back({minus_x,
                    Rational(1),
                    {cpair(ratio(1, 2), ModuleGenerator::constant_one()),
                     cpair(Rational(1), ModuleGenerator::poly_case(Rational(1), -1, mi({1})))},
                    Polynomial(1)});
  forged.push_back({minus_x,
                    Rational(1),
                    {cpair(Rational(-1), ModuleGenerator::poly_case(Rational(1), 1, mi({1}))),
                     cpair(ratio(3, 2), ModuleGenerator::constant_one())},
                    Polynomial(1)});
  forged.push_back({minus_x,
                    Rational(1),
                    {cpair(Rational(1), ModuleGenerator::poly_case(ratio(1, 2), -1, mi({1})))},
                    Polynomial(1)});
  for (std::size_t i = 0; i < forged.size(); ++i) {
    if (verify_certificate(forged[i], phi).valid) {
      detail = "forged certificate " + std::to_string(i + 1) + " accepted";
      return false;
    }
  }
  // A trivial certificate below the boundary slack must not even assemble.
  try {
    trivial_certificate(minus_x, phi, ratio(1, 2));
    detail = "trivial certificate for -x assembled at eps=1/2";
    return false;
  } catch (const NotDiagonallyDominant&) {
  }

  // Certified gaps can never undercut a sampled lower bound on the distance.
  const std::vector<std::vector<Rational>> pts = {
      {Rational(-1)}, {ratio(-1, 2)}, {Rational(0)}, {ratio(1, 2)}, {Rational(1)}};
  const Polynomial f = upoly({{0, Rational(1)}, {1, Rational(-1)}});
  for (const Rational& eps : {ratio(1, 2), ratio(1, 10)}) {
    const auto res = compile(trivial_certificate(f, phi, eps), phi, 1);
    if (!(distance_lower_bound(f, pts, phi, 2) <= res.certified_gap)) {
      detail = "certified gap contradicts the sampled lower bound for 1-x";
      return false;
    }
  }
  // At the boundary slack the certificate exists and its gap stays above 1.
  const auto boundary = compile(trivial_certificate(minus_x, phi, Rational(2)), phi, 1);
  if (!(distance_lower_bound(minus_x, pts, phi, 2) <= boundary.certified_gap)) {
    detail = "boundary certificate for -x certifies an impossible gap";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. Tail-bound soundness: the certified geometric bound dominates the next
//    ten thousand terms of the exact coefficient recurrence, for random
//    bases, weights, exponents, and truncation orders.

bool tail_soundness(std::string& detail) {
  Rng rng(20260816);
  const unsigned kTerms = 10000;
  const unsigned kBits = 256;  // accumulator grid; rounding is always upward
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned d = static_cast<unsigned>(rng.range(1, 3));
    const int sign = rng.coin() ? 1 : -1;
    const Rational r = rng.rational_in(ratio(1, 2), Rational(16));
    const Rational q = rng.rational_in(ratio(1, 100), ratio(95, 100));  // w/r
    const Rational w = r * q;
    const unsigned order = static_cast<unsigned>(rng.range(3, 40));
    const RootExpansion x = expand_root_fixed(r, sign, d, order, 100);
    const TailBound tb = x.tail_bound(w);

    // Continue the recurrence from the stored a_N with upward rounding, so
    // the accumulated partial tail is itself an upper bound on the truth.
    Rational term = round_up_dyadic(qabs(x.coeff(order)) * qpow(w, order), kBits);
    Rational partial(0);
    for (unsigned i = order; i < order + kTerms; ++i) {
      const Rational step =
          ratio(Int(2) * d * i - 1, Int(2) * d * (i + 1)) * q;  // |1-2di|/(2d(i+1)) * w/r
      term = round_up_dyadic(term * step, kBits);
      partial += term;
    }
    if (!(partial <= tb.bound)) {
      detail = "tail bound violated at trial " + std::to_string(trial + 1) + " (r=" + rstr(r) +
               " w=" + rstr(w) + " d=" + std::to_string(d) + " N=" + std::to_string(order) + ")";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. Largest absolute-value minorant: the graded dynamic program agrees with
//    exhaustive enumeration of additive factorizations, and the result obeys
//    the absolute-value axioms.

Rational brute_minorant(const WeakAbsoluteValue& w, unsigned n, unsigned floor_part,
                        const Rational& prod) {
  // Partitions of n into parts >= floor_part, nondecreasing; empty product
  // closes a partition.
  if (n == 0) return prod;
  Rational best(-1);
  for (unsigned part = floor_part; part <= n; ++part) {
    const Rational sub = brute_minorant(w, n - part, part, prod * w.value(mi({part})));
    if (sub < 0) continue;  // no completion with parts >= part
    if (best < 0 || sub < best) best = sub;
  }
  return best;
}

bool minorant_equivalence(std::string& detail) {
  Rng rng(977);
  for (int trial = 0; trial < 50; ++trial) {
    WeakAbsoluteValue::Table t;
    t[mi({0})] = rng.rational_in(Rational(1), Rational(3), 8);
    for (unsigned k = 1; k <= 12; ++k) t[mi({k})] = rng.rational_in(ratio(1, 4), Rational(4), 8);
    // One graded clamp pass makes the table weakly submultiplicative: each
    // clamp only lowers an entry of strictly higher degree than its source.
    for (unsigned k = 1; 2 * k <= 12; ++k)
      t[mi({2 * k})] = qmin(t[mi({2 * k})], t[mi({k})] * t[mi({k})]);
    const WeakAbsoluteValue w(1, {0}, t);
    if (w.degenerate()) {
      detail = "fixture " + std::to_string(trial + 1) + " unexpectedly degenerate";
      return false;
    }
    for (unsigned n = 0; n <= 12; ++n) {
      const Rational dp = w.phi_prime(mi({n}));
      const Rational brute =
          n == 0 ? w.value(mi({0})) : brute_minorant(w, n, 1, Rational(1));
      if (!(dp == brute)) {
        detail = "dp and enumeration disagree at n=" + std::to_string(n) + " (" + rstr(dp) +
                 " vs " + rstr(brute) + ")";
        return false;
      }
      if (!(dp <= w.value(mi({n})))) {
        detail = "minorant exceeds the table at n=" + std::to_string(n);
        return false;
      }
    }
    if (!(w.phi_prime(mi({0})) >= 1)) {
      detail = "phi'(0) < 1 on a non-degenerate table";
      return false;
    }
    for (unsigned a = 0; a <= 12; ++a)
      for (unsigned b = a; a + b <= 12; ++b)
        if (!(w.phi_prime(mi({a + b})) <= w.phi_prime(mi({a})) * w.phi_prime(mi({b})))) {
          detail = "submultiplicativity fails at " + std::to_string(a) + "+" + std::to_string(b);
          return false;
        }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5. Moment functionals of genuine measures pass every necessary condition:
//    Hankel positivity, mass bounds, Cauchy-Schwarz, and the weak-weight
//    mass bound through the minorant.

bool moment_suite(std::string& detail) {
  Rng rng(31415);
  const StarSemigroup sg = StarSemigroup::free_commutative(2);
  const AbsoluteValue phi = AbsoluteValue::one(2);
  const auto ball3 = indices_up_to(2, 3);
  const auto ball6 = indices_up_to(2, 6);

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<Rational, Semicharacter>> atoms;
    const int na = static_cast<int>(rng.range(1, 8));
    for (int j = 0; j < na; ++j) {
      const Rational wgt = rng.rational_in(ratio(1, 100), Rational(2), 8);
      std::vector<Rational> x = {rng.rational_in(Rational(-1), Rational(1)),
                                 rng.rational_in(Rational(-1), Rational(1))};
      atoms.emplace_back(wgt, Semicharacter::real_point(sg, std::move(x)));
    }
    const DiscreteMeasure mu = DiscreteMeasure::checked(sg, std::move(atoms), phi, 6);
    const MomentFunctional L = functional_from_measure(mu, 6);
    const Rational mass = mu.mass();

    for (unsigned deg = 1; deg <= 3; ++deg) {
      const HankelResult hr = hankel_psd_check(L, deg);
      if (const auto* wit = std::get_if<HankelWitness>(&hr)) {
        if (wit->min_eigenvalue < -1e-9) {
          detail = "hankel eigenvalue " + std::to_string(wit->min_eigenvalue) + " at degree " +
                   std::to_string(deg) + ", trial " + std::to_string(trial + 1);
          return false;
        }
      }
    }
    for (const auto& [s, v] : L.values()) {
      if (!v.is_real() || !(qabs(v.re) <= mass)) {
        detail = "|L(s)| exceeds the mass at " + multiindex_str(s);
        return false;
      }
    }
    for (const MultiIndex& s : ball3)
      for (const MultiIndex& t : ball3) {
        const Rational lhs = L(s + t).norm_sq();
        if (!(lhs <= L(s + s).re * L(t + t).re)) {
          detail = "cauchy-schwarz fails at (" + multiindex_str(s) + ", " + multiindex_str(t) + ")";
          return false;
        }
      }

    // Weak-weight fixture with entries >= 1 on the degree-6 ball: every atom
    // of the box then lies inside K_{phi'}, so the minorant mass bound holds.
    WeakAbsoluteValue::Table t;
    for (const MultiIndex& s : ball6)
      t[s] = s.degree() == 0 ? rng.rational_in(Rational(1), Rational(2), 8)
                             : rng.rational_in(Rational(1), Rational(4), 8);
    for (const MultiIndex& s : ball6)
      if (2 * s.degree() <= 6) {
        const MultiIndex dbl = s + s;
        t[dbl] = qmin(t[dbl], t[s] * t[s]);
      }
    const WeakAbsoluteValue wphi(2, {0, 1}, std::move(t));
    for (const auto& [s, v] : L.values())
      if (!(qabs(v.re) <= mass * wphi.phi_prime(s))) {
        detail = "weak-weight mass bound fails at " + multiindex_str(s);
        return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 6. Numeric certificate search recovers exactly verifiable certificates for
//    the two desk-scale targets; the stretch target either certifies or
//    honestly reports inconclusive within its budget.

bool gram_recovery(std::string& detail, std::string& note) {
  const AbsoluteValue phi1 = AbsoluteValue::one(1);
  SolverOptions opts;
  opts.max_iterations = 100000;

  const Polynomial f1 = upoly({{0, ratio(5, 4)}, {2, Rational(-1)}});
  const FindResult r1 = find_certificate(f1, phi1, Rational(0), 2, opts);
  const auto* c1 = std::get_if<Certificate>(&r1);
  if (!c1) {
    detail = "no certificate found for 5/4 - x^2";
    return false;
  }
  const auto v1 = verify_certificate(*c1, phi1);
  if (!v1.valid || !(v1.residual_norm == 0)) {
    detail = "certificate for 5/4 - x^2 fails exact verification";
    return false;
  }

  const Polynomial one_minus = upoly({{0, Rational(1)}, {1, Rational(-1)}});
  const Polynomial one_plus = upoly({{0, Rational(1)}, {1, Rational(1)}});
  const Polynomial f2 =
      one_minus * one_minus * one_plus + Polynomial::constant(1, ratio(1, 20));
  const Rational eps2 = ratio(1, 10);
  const FindResult r2 = find_certificate(f2, phi1, eps2, 3, opts);
  const auto* c2 = std::get_if<Certificate>(&r2);
  if (!c2) {
    detail = "no certificate found for (1-x)^2(1+x) + 1/20";
    return false;
  }
  const auto v2 = verify_certificate(*c2, phi1);
  if (!v2.valid || !(v2.residual_norm <= eps2 / 4)) {
    detail = "certificate for (1-x)^2(1+x) + 1/20 fails verification";
    return false;
  }

  // Stretch target: certified or honestly inconclusive inside a minute.
  Polynomial motzkin(2);
  motzkin.add_term(mi({4, 2}), Rational(1));
  motzkin.add_term(mi({2, 4}), Rational(1));
  motzkin.add_term(mi({2, 2}), Rational(-3));
  motzkin.add_term(mi({0, 0}), ratio(3, 2));
  SolverOptions stretch = opts;
  stretch.time_budget_ms = 55000;
  const auto t0 = Clock::now();
  const FindResult r3 = find_certificate(motzkin, AbsoluteValue::one(2), ratio(1, 2), 6, stretch);
  if (seconds_since(t0) >= 60.0) {
    detail = "stretch search overran its minute";
    return false;
  }
  if (const auto* c3 = std::get_if<Certificate>(&r3)) {
    if (!verify_certificate(*c3, AbsoluteValue::one(2)).valid) {
      detail = "stretch search returned a certificate that fails verification";
      return false;
    }
    note = "stretch target certified";
  } else {
    note = "stretch target inconclusive: " + std::get<InfeasibleReport>(r3).message;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. Identity lab: the factorial identity, the exact power split, and the
//    expansion displays all hold symbolically.

bool identity_lab(std::string& detail) {
  for (unsigned n = 1; n <= 12; ++n)
    if (!hw_identity_check(n).equal) {
      detail = "factorial identity fails at n=" + std::to_string(n);
      return false;
    }

  Rng rng(271828);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t arity = static_cast<std::size_t>(rng.range(1, 3));
    const unsigned deg = static_cast<unsigned>(rng.range(0, 4));
    const unsigned d = static_cast<unsigned>(rng.range(1, 3));
    Polynomial f(arity);
    for (const MultiIndex& s : indices_up_to(arity, deg))
      if (rng.coin()) f.add_term(s, rng.rational(4, 4));
    const auto [plus, minus] = power_split(f, d);
    for (const auto& [w, base] : plus.entries)
      if (w < 0) {
        detail = "negative weight in the positive part";
        return false;
      }
    for (const auto& [w, base] : minus.entries)
      if (w < 0) {
        detail = "negative weight in the negative part";
        return false;
      }
    if (!(materialize(plus, f) - materialize(minus, f) == f)) {
      detail = "power split does not reconstruct its input (trial " + std::to_string(trial + 1) +
               ")";
      return false;
    }
  }

  Polynomial a(4), t(4), r(4), k(4);
  a.add_term(mi({1, 0, 0, 0}), Rational(1));
  t.add_term(mi({0, 1, 0, 0}), Rational(1));
  r.add_term(mi({0, 0, 1, 0}), Rational(1));
  k.add_term(mi({0, 0, 0, 1}), Rational(1));
  for (unsigned n : {2u, 4u, 6u})
    for (const auto& rep : basic_trick_check(n, a, t, r, k))
      if (!rep.equal) {
        detail = "expansion display fails symbolically at n=" + std::to_string(n);
        return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// 8. Conjugate-pair semigroup: the five generator families are nonnegative
//    on the closed unit disk, and the closure pipeline runs unchanged on the
//    semigroup algebra.

bool semigroup_generality(std::string& detail) {
  const StarSemigroup sg = StarSemigroup::conjugate_pair(1);
  const AbsoluteValue phi = AbsoluteValue::one(2);

  std::vector<MultiIndex> support;
  for (const MultiIndex& s : indices_up_to(2, 2))
    if (s.degree() > 0) support.push_back(s);
  const auto gens = module_generators(sg, support);

  Rng rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    Rational a, b;
    do {
      a = rng.rational_in(Rational(-1), Rational(1), 8);
      b = rng.rational_in(Rational(-1), Rational(1), 8);
    } while (a * a + b * b > 1);
    const Semicharacter alpha = Semicharacter::complex_point(sg, {ComplexQ(a, b)});
    for (const auto& g : gens) {
      const ComplexQ v = alpha.eval(materialize_star(g, phi, sg));
      if (!v.is_real() || v.re < 0) {
        detail = "generator " + generator_str(g) + " negative at a disk point";
        return false;
      }
    }
  }

  StarElement f = StarElement::constant(sg, ComplexQ(Rational(1)));
  f.add_term(mi({1, 1}), ComplexQ(Rational(-1)));
  const StarCertificate cert = trivial_certificate(f, phi, ratio(1, 10));
  if (!verify_certificate(cert, phi).valid) {
    detail = "certificate for 1 - z conj(z) rejected";
    return false;
  }
  const auto res = compile(cert, phi, 1);
  if (!(res.certified_gap <= ratio(1, 10))) {
    detail = "semigroup gap " + rstr(res.certified_gap) + " > 1/10";
    return false;
  }
  if (!(recompute_gap(f, res.g, phi) == res.certified_gap)) {
    detail = "semigroup gap recomputation disagrees";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)(std::string&);
  };

  int failures = 0;
  const auto report = [&](int no, const char* name, bool ok, const std::string& extra) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << no << ". " << name;
    if (!extra.empty()) std::cout << "  [" << extra << "]";
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
  };

  const Criterion simple[] = {
      {"closure pipeline reaches every requested gap", closure_pipeline},
      {"boundary certificates are rejected below slack 2", boundary_sanity},
      {"series tail bounds dominate ten thousand continued terms", tail_soundness},
      {"minorant dynamic program matches exhaustive factorizations", minorant_equivalence},
      {"measure moments pass all necessary positivity conditions", moment_suite},
  };
  int no = 1;
  for (const auto& c : simple) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    report(no++, c.name, ok, ok ? "" : detail);
  }

  {
    std::string detail, note;
    bool ok = false;
    try {
      ok = gram_recovery(detail, note);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    report(no++, "numeric search recovers exact certificates", ok, ok ? note : detail);
  }

  const Criterion rest[] = {
      {"expansion identities hold symbolically", identity_lab},
      {"conjugate-pair semigroup runs the full pipeline", semigroup_generality},
  };
  for (const auto& c : rest) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    report(no++, c.name, ok, ok ? "" : detail);
  }

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
