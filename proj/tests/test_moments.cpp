#include <doctest.h>

#include <utility>
#include <variant>
#include <vector>

#include "cone_closure/rational.hpp"
#include "cone_closure/moments.hpp"
#include "cone_closure/rng.hpp"

using namespace cone;

namespace {

MultiIndex mi(std::vector<unsigned> e) {
  MultiIndex m(e.size());
  m.e = std::move(e);
  return m;
}

ComplexQ cq(long long re, long long im) { return ComplexQ(Rational(re), Rational(im)); }

// 1/2 at +1 plus 1/2 at -1 on the real line.
DiscreteMeasure rademacher() {
  const auto sg = StarSemigroup::free_commutative(1);
  return DiscreteMeasure::checked(
      sg,
      {{ratio(1, 2), Semicharacter::real_point(sg, {Rational(1)})},
       {ratio(1, 2), Semicharacter::real_point(sg, {Rational(-1)})}},
      AbsoluteValue::one(1), 4);
}

}  // namespace

TEST_CASE("moments of the symmetric two-point measure alternate") {
  const auto L = functional_from_measure(rademacher(), 4);
  CHECK(L.degree() == 4);
  CHECK(L(mi({0})) == cq(1, 0));
  CHECK(L(mi({1})) == cq(0, 0));
  CHECK(L(mi({2})) == cq(1, 0));
  CHECK(L(mi({3})) == cq(0, 0));
  CHECK(L(mi({4})) == cq(1, 0));
  CHECK_THROWS_AS(L(mi({5})), DomainError);
}

TEST_CASE("the involution closure fills mirrored entries") {
  const auto sg = StarSemigroup::conjugate_pair(1);
  MomentFunctional::Table t;
  t[mi({0, 0})] = cq(1, 0);
  t[mi({1, 0})] = cq(2, 3);
  const MomentFunctional L(sg, t, 1);
  REQUIRE(L.has(mi({0, 1})));
  CHECK(L(mi({0, 1})) == cq(2, -3));
  CHECK(L(mi({1, 0})) == cq(2, 3));
}

TEST_CASE("tables that contradict the involution are rejected") {
  const auto sg = StarSemigroup::conjugate_pair(1);
  MomentFunctional::Table t;
  t[mi({1, 0})] = cq(0, 1);
  t[mi({0, 1})] = cq(0, 1);  // should be the conjugate 0 - i
  CHECK_THROWS_AS(MomentFunctional(sg, t, 1), UsageError);

  // On the free semigroup s* = s, so every stored value must be real.
  MomentFunctional::Table real_t;
  real_t[mi({1})] = cq(0, 1);
  CHECK_THROWS_AS(MomentFunctional(StarSemigroup::free_commutative(1), real_t, 1), UsageError);
}

TEST_CASE("the mass must be real and nonnegative") {
  const auto sg = StarSemigroup::free_commutative(1);
  MomentFunctional::Table neg;
  neg[mi({0})] = cq(-1, 0);
  CHECK_THROWS_AS(MomentFunctional(sg, neg, 0), UsageError);

  MomentFunctional::Table imag;
  imag[mi({0, 0})] = cq(1, 1);
  CHECK_THROWS_AS(MomentFunctional(StarSemigroup::conjugate_pair(1), imag, 0), UsageError);
}

TEST_CASE("degree and arity bounds are enforced at construction") {
  const auto sg = StarSemigroup::free_commutative(1);
  MomentFunctional::Table t;
  t[mi({3})] = cq(1, 0);
  CHECK_THROWS_AS(MomentFunctional(sg, t, 2), UsageError);
  MomentFunctional::Table wrong;
  wrong[mi({1, 1})] = cq(1, 0);
  CHECK_THROWS_AS(MomentFunctional(sg, wrong, 2), UsageError);
}

TEST_CASE("applying the functional is evaluation against the measure") {
  const auto mu = rademacher();
  const auto L = functional_from_measure(mu, 4);
  auto f = StarElement::constant(mu.sg, cq(3, 0));
  f.add_term(mi({1}), cq(-2, 0));
  f.add_term(mi({4}), cq(1, 1));
  ComplexQ direct;
  for (const auto& [w, a] : mu.atoms) direct += ComplexQ(w) * a.eval(f);
  CHECK(L.apply(f) == direct);

  auto big = StarElement::term(mu.sg, mi({9}), cq(1, 0));
  CHECK_THROWS_AS(L.apply(big), UsageError);
}

TEST_CASE("measure validation rejects bad atoms") {
  const auto sg = StarSemigroup::free_commutative(1);
  const auto phi = AbsoluteValue::one(1);
  const auto inside = Semicharacter::real_point(sg, {ratio(1, 2)});
  CHECK_THROWS_AS(DiscreteMeasure::checked(sg, {{Rational(0), inside}}, phi, 3), UsageError);
  CHECK_THROWS_AS(DiscreteMeasure::checked(sg, {{Rational(-1), inside}}, phi, 3), UsageError);

  const auto outside = Semicharacter::real_point(sg, {Rational(2)});
  CHECK_THROWS_AS(DiscreteMeasure::checked(sg, {{Rational(1), outside}}, phi, 3), UsageError);

  const auto other = Semicharacter::real_point(StarSemigroup::free_commutative(2),
                                               {Rational(0), Rational(0)});
  CHECK_THROWS_AS(DiscreteMeasure::checked(sg, {{Rational(1), other}}, phi, 3), UsageError);

  const auto mu = DiscreteMeasure::checked(sg, {{Rational(2), inside}}, phi, 3);
  CHECK(mu.mass() == Rational(2));
}

TEST_CASE("disk atoms pass and out-of-disk atoms fail the pair check") {
  const auto sg = StarSemigroup::conjugate_pair(1);
  const auto phi = AbsoluteValue::one(2);
  const auto on_circle =
      Semicharacter::complex_point(sg, {ComplexQ(ratio(3, 5), ratio(4, 5))});
  const auto mu = DiscreteMeasure::checked(sg, {{Rational(1), on_circle}}, phi, 3);
  CHECK(mu.mass() == Rational(1));

  const auto too_big = Semicharacter::complex_point(sg, {ComplexQ(Rational(1), Rational(1))});
  CHECK_THROWS_AS(DiscreteMeasure::checked(sg, {{Rational(1), too_big}}, phi, 3), UsageError);
}

TEST_CASE("the moment matrix of a measure is positive semidefinite") {
  const auto L = functional_from_measure(rademacher(), 4);
  for (const unsigned deg : {1u, 2u}) {
    const auto hr = hankel_psd_check(L, deg);
    REQUIRE(std::holds_alternative<HankelPsd>(hr));
    CHECK(std::get<HankelPsd>(hr).min_eigenvalue >= -1e-9);
  }
}

TEST_CASE("an indefinite moment matrix yields an exact negative witness") {
  MomentFunctional::Table t;
  t[mi({0})] = cq(1, 0);
  t[mi({1})] = cq(2, 0);
  t[mi({2})] = cq(1, 0);
  const MomentFunctional L(StarSemigroup::free_commutative(1), t, 2);
  const auto hr = hankel_psd_check(L, 1);
  REQUIRE(std::holds_alternative<HankelWitness>(hr));
  const auto& w = std::get<HankelWitness>(hr);
  CHECK(w.min_eigenvalue < 0);
  REQUIRE(w.basis.size() == 2);
  CHECK(w.basis[0] == mi({0}));
  CHECK(w.basis[1] == mi({1}));
  CHECK(w.value == Rational(-2));
  // The witness must reproduce its negative value through apply().
  StarElement p(StarSemigroup::free_commutative(1));
  for (std::size_t j = 0; j < w.basis.size(); ++j) p.add_term(w.basis[j], w.coeffs[j]);
  CHECK(L.apply(p * p.star()).re == w.value);
}

TEST_CASE("the zero functional is accepted as psd") {
  MomentFunctional::Table t;
  t[mi({0})] = cq(0, 0);
  t[mi({1})] = cq(0, 0);
  t[mi({2})] = cq(0, 0);
  const MomentFunctional L(StarSemigroup::free_commutative(1), t, 2);
  CHECK(std::holds_alternative<HankelPsd>(hankel_psd_check(L, 1)));
}

TEST_CASE("complex moment matrices use the doubled real embedding") {
  const auto sg = StarSemigroup::conjugate_pair(1);
  const auto atom = Semicharacter::complex_point(sg, {ComplexQ(Rational(0), Rational(1))});
  const auto mu = DiscreteMeasure::checked(sg, {{Rational(1), atom}}, AbsoluteValue::one(2), 3);
  const auto L = functional_from_measure(mu, 2);
  CHECK(L(mi({1, 0})) == cq(0, 1));
  const auto hr = hankel_psd_check(L, 1);
  REQUIRE(std::holds_alternative<HankelPsd>(hr));
}

TEST_CASE("the hankel degree cannot overflow the table") {
  const auto L = functional_from_measure(rademacher(), 2);
  CHECK_THROWS_AS(hankel_psd_check(L, 2), UsageError);
}

TEST_CASE("the growth bound test compares against C phi exactly") {
  MomentFunctional::Table t;
  for (unsigned s = 0; s <= 3; ++s) t[mi({s})] = ComplexQ(qpow(Rational(3), s));
  const MomentFunctional L(StarSemigroup::free_commutative(1), t, 3);
  const auto bad = moment_condition_check(L, AbsoluteValue::one(1), Rational(1), 1, {});
  CHECK_FALSE(bad.bound_ok);
  CHECK_FALSE(bad.detail.empty());
  const auto good = moment_condition_check(L, AbsoluteValue::one(1), Rational(27), 1, {});
  CHECK(good.bound_ok);
}

TEST_CASE("measure moments pass every necessary condition") {
  const auto L = functional_from_measure(rademacher(), 4);
  StarElement probe(StarSemigroup::free_commutative(1));
  probe.add_term(mi({1}), cq(1, 0));
  probe.add_term(mi({0}), cq(-1, 0));
  const auto rep = moment_condition_check(L, AbsoluteValue::one(1), Rational(1), 1, {probe});
  CHECK(rep.bound_ok);
  CHECK(rep.power_ok);
  CHECK(rep.cs_ok);
  CHECK(rep.detail.empty());
}

TEST_CASE("a negative even moment fails the power test") {
  MomentFunctional::Table t;
  t[mi({0})] = cq(1, 0);
  t[mi({1})] = cq(0, 0);
  t[mi({2})] = cq(-1, 0);
  const MomentFunctional L(StarSemigroup::free_commutative(1), t, 2);
  StarElement x(StarSemigroup::free_commutative(1));
  x.add_term(mi({1}), cq(1, 0));
  const auto rep = moment_condition_check(L, AbsoluteValue::one(1), Rational(1), 1, {x});
  CHECK_FALSE(rep.power_ok);
  CHECK_FALSE(rep.detail.empty());
}

TEST_CASE("a cauchy-schwarz violation is caught exactly") {
  MomentFunctional::Table t;
  t[mi({0})] = cq(1, 0);
  t[mi({1})] = cq(1, 0);
  t[mi({2})] = cq(0, 0);
  const MomentFunctional L(StarSemigroup::free_commutative(1), t, 2);
  const auto rep = moment_condition_check(L, AbsoluteValue::one(1), Rational(1), 1, {});
  CHECK_FALSE(rep.cs_ok);
}

TEST_CASE("random small measures satisfy hankel and cauchy-schwarz") {
  Rng rng(20260816);
  const auto sg = StarSemigroup::conjugate_pair(1);
  const auto phi = AbsoluteValue::one(2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<Rational, Semicharacter>> atoms;
    const int k = static_cast<int>(rng.range(1, 4));
    for (int j = 0; j < k; ++j) {
      ComplexQ z;
      do {
        z = ComplexQ(rng.rational_in(Rational(-1), Rational(1), 8),
                     rng.rational_in(Rational(-1), Rational(1), 8));
      } while (z.norm_sq() > Rational(1));
      atoms.emplace_back(ratio(rng.range(1, 5), 4), Semicharacter::complex_point(sg, {z}));
    }
    const auto mu = DiscreteMeasure::checked(sg, std::move(atoms), phi, 4);
    const auto L = functional_from_measure(mu, 4);
    const auto hr = hankel_psd_check(L, 2);
    CHECK(std::holds_alternative<HankelPsd>(hr));
    const auto rep = moment_condition_check(L, phi, mu.mass(), 1, {});
    CHECK(rep.bound_ok);
    CHECK(rep.power_ok);
    CHECK(rep.cs_ok);
  }
}
