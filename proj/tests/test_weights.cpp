#include <doctest.h>

#include <vector>

#include "cone_closure/rational.hpp"
#include "cone_closure/rng.hpp"
#include "cone_closure/weights.hpp"

using namespace cone;

namespace {

MultiIndex mi(std::vector<unsigned> e) {
  MultiIndex m(e.size());
  m.e = std::move(e);
  return m;
}

// Odometer over {t : 0 <= t <= s componentwise}; returns false after wrap.
bool next_box(MultiIndex& t, const MultiIndex& s) {
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (t[i] < s[i]) {
      ++t.e[i];
      return true;
    }
    t.e[i] = 0;
  }
  return false;
}

// Exhaustive enumeration of factorizations s = t_1 + ... + t_k with all
// parts nonzero, parts nondecreasing in graded lex to visit each multiset
// once. Independent of the production DP.
void enum_partitions(const WeakAbsoluteValue& w, const MultiIndex& rest, const MultiIndex& floor,
                     const Rational& prod, Rational& best) {
  if (rest.degree() == 0) {
    if (prod < best) best = prod;
    return;
  }
  MultiIndex t(rest.arity());
  while (next_box(t, rest)) {
    if (graded_lex_less(t, floor)) continue;
    enum_partitions(w, rest.minus(t), t, prod * w.value(t), best);
  }
}

Rational brute_phi_prime(const WeakAbsoluteValue& w, const MultiIndex& s) {
  if (s.degree() == 0) return w.value(s);
  Rational best = w.value(s);
  enum_partitions(w, s, MultiIndex(s.arity()), Rational(1), best);
  return best;
}

Rational random_weight(Rng& rng) {
  return ratio(static_cast<long long>(rng.range(1, 12)), static_cast<long long>(rng.range(1, 4)));
}

// Random full-ball table made weak-admissible by clamping phi(s + s*) down
// to phi(s)^2 in graded order (each clamp only lowers later constraints'
// right-hand sides' arguments, never earlier ones).
WeakAbsoluteValue random_weak(Rng& rng, std::size_t arity, unsigned degree,
                              std::vector<unsigned> involution) {
  WeakAbsoluteValue::Table t;
  const auto ball = indices_up_to(arity, degree);
  for (const auto& s : ball) t[s] = random_weight(rng);
  t[MultiIndex(arity)] = ratio(static_cast<long long>(rng.range(1, 4)), 1);
  for (const auto& s : ball) {
    if (2 * s.degree() > degree) continue;
    MultiIndex star(arity);
    for (std::size_t i = 0; i < arity; ++i) star.e[involution[i]] = s[i];
    const MultiIndex ss = s + star;
    t[ss] = qmin(t.at(ss), t.at(s) * t.at(s));
  }
  return WeakAbsoluteValue(arity, std::move(involution), std::move(t));
}

}  // namespace

TEST_CASE("constant weight is one everywhere") {
  const auto phi = AbsoluteValue::one(2);
  CHECK(phi.kind() == PhiKind::one);
  CHECK(phi.arity() == 2);
  CHECK(phi(mi({0, 0})) == Rational(1));
  CHECK(phi(mi({3, 5})) == Rational(1));
  CHECK(phi.has_entry(mi({9, 9})));
  CHECK_THROWS_AS(phi(mi({1})), UsageError);
}

TEST_CASE("geometric weight is the product of radius powers") {
  const auto phi = AbsoluteValue::geometric({Rational(2), Rational(3)});
  CHECK(phi(mi({1, 2})) == Rational(18));
  CHECK(phi(mi({0, 0})) == Rational(1));
  CHECK(phi(mi({3, 0})) == Rational(8));
  CHECK_THROWS_AS(AbsoluteValue::geometric({}), UsageError);
  CHECK_THROWS_AS(AbsoluteValue::geometric({Rational(0)}), UsageError);
  CHECK_THROWS_AS(AbsoluteValue::geometric({Rational(-2)}), UsageError);
}

TEST_CASE("table weight validates submultiplicativity pairwise") {
  AbsoluteValue::Table good;
  good[mi({0})] = Rational(1);
  good[mi({1})] = Rational(2);
  good[mi({2})] = Rational(1);
  const auto phi = AbsoluteValue::table(1, good);
  CHECK(phi(mi({2})) == Rational(1));
  CHECK(phi.degree_bound() == 2);
  CHECK(phi.has_entry(mi({1})));
  CHECK_FALSE(phi.has_entry(mi({3})));
  CHECK_THROWS_AS(phi(mi({3})), DomainError);

  AbsoluteValue::Table bad = good;
  bad[mi({2})] = Rational(5);  // 5 > phi(1)^2 = 4
  CHECK_THROWS_AS(AbsoluteValue::table(1, bad), UsageError);

  AbsoluteValue::Table small_zero;
  small_zero[mi({0})] = ratio(1, 2);
  CHECK_THROWS_AS(AbsoluteValue::table(1, small_zero), UsageError);

  AbsoluteValue::Table negative;
  negative[mi({1})] = Rational(-1);
  CHECK_THROWS_AS(AbsoluteValue::table(1, negative), UsageError);

  // Zero entry defaults to 1 when omitted.
  AbsoluteValue::Table no_zero;
  no_zero[mi({1})] = Rational(3);
  CHECK(AbsoluteValue::table(1, no_zero)(mi({0})) == Rational(1));
}

TEST_CASE("weight function shifts a base weight") {
  const WeightFunction w(AbsoluteValue::one(1), ratio(1, 5));
  CHECK(w(mi({4})) == ratio(6, 5));
  CHECK(w.shift() == ratio(1, 5));
  CHECK_THROWS_AS(WeightFunction(AbsoluteValue::one(1), Rational(-1)), UsageError);
}

TEST_CASE("seminorm sums absolute coefficients times weights") {
  Polynomial f(2);
  f.add_term(mi({0, 0}), Rational(1));
  f.add_term(mi({1, 1}), Rational(-2));
  CHECK(seminorm(f, AbsoluteValue::one(2)) == Rational(3));

  Polynomial g(1);
  g.add_term(mi({0}), Rational(1));
  g.add_term(mi({1}), Rational(-1));
  CHECK(seminorm(g, AbsoluteValue::geometric({Rational(2)})) == Rational(3));

  CHECK(seminorm(Polynomial(2), AbsoluteValue::one(2)) == Rational(0));
}

TEST_CASE("seminorm is submultiplicative and homogeneous on random pairs") {
  Rng rng(11);
  const auto phi = AbsoluteValue::geometric({ratio(1, 2), Rational(3)});
  for (int trial = 0; trial < 25; ++trial) {
    Polynomial f(2), g(2);
    for (int k = 0; k < 4; ++k) {
      f.add_term(mi({static_cast<unsigned>(rng.range(0, 2)), static_cast<unsigned>(rng.range(0, 2))}),
                 ratio(static_cast<long long>(rng.range(-5, 5)), static_cast<long long>(rng.range(1, 3))));
      g.add_term(mi({static_cast<unsigned>(rng.range(0, 2)), static_cast<unsigned>(rng.range(0, 2))}),
                 ratio(static_cast<long long>(rng.range(-5, 5)), static_cast<long long>(rng.range(1, 3))));
    }
    CHECK(seminorm(f * g, phi) <= seminorm(f, phi) * seminorm(g, phi));
    CHECK(seminorm(f + g, phi) <= seminorm(f, phi) + seminorm(g, phi));
    const Rational r = ratio(-7, 3);
    CHECK(seminorm(f * Polynomial::constant(2, r), phi) == qabs(r) * seminorm(f, phi));
  }
}

TEST_CASE("complex seminorm upper bound is exact on Pythagorean coefficients") {
  CPolynomial f(1);
  f.add_term(mi({0}), ComplexQ(Rational(3), Rational(4)));  // |3+4i| = 5
  f.add_term(mi({1}), ComplexQ(Rational(0), Rational(-2)));
  CHECK(seminorm_upper(f, AbsoluteValue::one(1)) == Rational(7));

  // Irrational modulus: bound must still dominate |1+i| = sqrt(2).
  CPolynomial g(1);
  g.add_term(mi({0}), ComplexQ(Rational(1), Rational(1)));
  const Rational b = seminorm_upper(g, AbsoluteValue::one(1));
  CHECK(b * b >= Rational(2));
  CHECK(b < ratio(1414213563, 1000000000));
}

TEST_CASE("box membership accepts the unit box under the constant weight") {
  const auto phi = AbsoluteValue::one(2);
  for (const unsigned d : {1u, 3u, 6u}) {
    const auto r = kphi_membership({ratio(1, 2), Rational(-1)}, phi, d);
    CHECK(r.inside);
  }
  const auto out = kphi_membership({ratio(3, 2), Rational(0)}, phi, 1);
  CHECK_FALSE(out.inside);
  CHECK(out.witness == mi({1, 0}));
}

TEST_CASE("table membership witnesses appear only at the covered degrees") {
  AbsoluteValue::Table t;
  t[mi({1})] = Rational(2);
  t[mi({2})] = Rational(1);
  const auto phi = AbsoluteValue::table(1, t);
  const Rational x = ratio(3, 2);
  CHECK(kphi_membership({x}, phi, 1).inside);  // 3/2 <= 2
  const auto r = kphi_membership({x}, phi, 2);
  CHECK_FALSE(r.inside);  // 9/4 > 1
  CHECK(r.witness == mi({2}));
  CHECK_THROWS_AS(kphi_membership({x}, phi, 0), UsageError);
  CHECK_THROWS_AS(kphi_membership({x, x}, phi, 1), UsageError);
}

TEST_CASE("membership is monotone in the depth") {
  AbsoluteValue::Table t;
  t[mi({1})] = Rational(2);
  t[mi({2})] = Rational(1);
  t[mi({3})] = Rational(2);
  t[mi({4})] = Rational(1);
  const auto phi = AbsoluteValue::table(1, t);
  Rng rng(5);
  bool saw_flip = false;
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<Rational> x{ratio(rng.range(-8, 8), 5)};
    bool prev = true;
    for (unsigned d = 1; d <= 4; ++d) {
      const bool now = kphi_membership(x, phi, d).inside;
      if (!prev) CHECK_FALSE(now);  // deeper approximations only shrink
      if (prev && !now) saw_flip = true;
      prev = now;
    }
  }
  CHECK(saw_flip);
}

TEST_CASE("complex membership compares squared moduli exactly") {
  const auto phi = AbsoluteValue::one(2);  // one complex coordinate: (s, s*)
  const std::vector<ComplexQ> in{ComplexQ(ratio(3, 5), ratio(4, 5))};  // |z| = 1
  CHECK(kphi_membership_complex(in, phi, 4).inside);
  const std::vector<ComplexQ> out{ComplexQ(Rational(1), Rational(1))};
  const auto r = kphi_membership_complex(out, phi, 3);
  CHECK_FALSE(r.inside);
  CHECK(r.witness.degree() == 1);
  CHECK_THROWS_AS(kphi_membership_complex(out, AbsoluteValue::one(1), 2), UsageError);
}

TEST_CASE("weak weight table requires a full ball and the weak axiom") {
  WeakAbsoluteValue::Table t;
  t[mi({0})] = Rational(1);
  t[mi({1})] = Rational(2);
  t[mi({2})] = Rational(1);
  t[mi({3})] = Rational(8);
  const WeakAbsoluteValue w(1, {0}, t);
  CHECK(w.degree_bound() == 3);
  CHECK_FALSE(w.degenerate());
  CHECK(w.raw(mi({3})) == Rational(8));
  CHECK(w.value(mi({3})) == Rational(8));

  WeakAbsoluteValue::Table gap = t;
  gap.erase(mi({2}));
  CHECK_THROWS_AS(WeakAbsoluteValue(1, {0}, gap), UsageError);

  WeakAbsoluteValue::Table weakless = t;
  weakless[mi({2})] = Rational(5);  // phi(1+1*) = 5 > phi(1)^2 = 4
  CHECK_THROWS_AS(WeakAbsoluteValue(1, {0}, weakless), UsageError);

  CHECK_THROWS_AS(WeakAbsoluteValue(1, {1}, t), UsageError);       // not a permutation
  CHECK_THROWS_AS(WeakAbsoluteValue(1, {0, 1}, t), UsageError);    // wrong length
  CHECK_THROWS_AS(w.raw(mi({4})), DomainError);
  CHECK_THROWS_AS(w.phi_prime(mi({4})), DomainError);
}

TEST_CASE("phi prime finds the cheap factorization") {
  // phi(s) = 1 for even s, 2^s for odd s: the split {1, 2} beats phi(3) = 8.
  WeakAbsoluteValue::Table t;
  t[mi({0})] = Rational(1);
  t[mi({1})] = Rational(2);
  t[mi({2})] = Rational(1);
  t[mi({3})] = Rational(8);
  const WeakAbsoluteValue w(1, {0}, t);
  CHECK(w.phi_prime(mi({3})) == Rational(2));
  CHECK(w.phi_prime(mi({2})) == Rational(1));
  CHECK(w.phi_prime(mi({1})) == Rational(2));
  CHECK(w.phi_prime(mi({0})) == Rational(1));
}

TEST_CASE("phi prime of a true absolute value is the value itself") {
  const auto base = AbsoluteValue::geometric({Rational(2), Rational(3)});
  const auto w = WeakAbsoluteValue::from_absolute_value(base, 4, {0, 1});
  for (const auto& s : indices_up_to(2, 4)) CHECK(w.phi_prime(s) == base(s));
}

TEST_CASE("constant weight stays one under phi prime") {
  const auto w = WeakAbsoluteValue::from_absolute_value(AbsoluteValue::one(1), 6, {0});
  for (const auto& s : indices_up_to(1, 6)) CHECK(w.phi_prime(s) == Rational(1));
}

TEST_CASE("swap involution takes the cheaper of the mirrored entries") {
  // Two swapped coordinates: m(s) = min(phi(s), phi(s reversed)).
  WeakAbsoluteValue::Table t;
  for (const auto& s : indices_up_to(2, 2)) t[s] = Rational(1);
  t[mi({1, 0})] = Rational(5);
  t[mi({0, 1})] = Rational(3);
  t[mi({2, 0})] = Rational(9);
  t[mi({0, 2})] = Rational(7);
  const WeakAbsoluteValue w(2, {1, 0}, t);
  CHECK(w.star(mi({1, 0})) == mi({0, 1}));
  CHECK(w.star(mi({2, 0})) == mi({0, 2}));
  CHECK(w.value(mi({1, 0})) == Rational(3));
  CHECK(w.value(mi({0, 1})) == Rational(3));
  CHECK(w.phi_prime(mi({2, 0})) == w.phi_prime(mi({0, 2})));
}

TEST_CASE("degenerate weak weights collapse to zero") {
  WeakAbsoluteValue::Table t;
  t[mi({0})] = Rational(0);
  t[mi({1})] = Rational(3);
  t[mi({2})] = Rational(4);
  const WeakAbsoluteValue w(1, {0}, t);
  CHECK(w.degenerate());
  CHECK(w.phi_prime(mi({1})) == Rational(0));
  CHECK(w.phi_prime(mi({2})) == Rational(0));
}

TEST_CASE("phi prime matches exhaustive partition enumeration") {
  Rng rng(20260816);
  for (int trial = 0; trial < 30; ++trial) {
    const auto w = random_weak(rng, 1, 6, {0});
    for (const auto& s : indices_up_to(1, 6)) CHECK(w.phi_prime(s) == brute_phi_prime(w, s));
  }
  for (int trial = 0; trial < 15; ++trial) {
    const auto w = random_weak(rng, 2, 4, {0, 1});
    for (const auto& s : indices_up_to(2, 4)) CHECK(w.phi_prime(s) == brute_phi_prime(w, s));
  }
  for (int trial = 0; trial < 15; ++trial) {
    const auto w = random_weak(rng, 2, 4, {1, 0});
    for (const auto& s : indices_up_to(2, 4)) CHECK(w.phi_prime(s) == brute_phi_prime(w, s));
  }
}

TEST_CASE("phi prime is a star-invariant absolute value") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = random_weak(rng, 2, 4, {1, 0});
    const auto ball = indices_up_to(2, 4);
    for (const auto& s : ball) {
      CHECK(w.phi_prime(s) <= w.value(s));
      CHECK(w.phi_prime(w.star(s)) == w.phi_prime(s));
      for (const auto& t : ball) {
        if (s.degree() + t.degree() > 4) continue;
        CHECK(w.phi_prime(s + t) <= w.phi_prime(s) * w.phi_prime(t));
      }
    }
  }
}
