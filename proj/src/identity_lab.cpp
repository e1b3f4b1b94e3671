#include "cone_closure/identity_lab.hpp"

namespace cone {
namespace {

Int factorial(unsigned n) {
  Int f(1);
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Int binom(unsigned n, unsigned k) {
  if (k > n) return Int(0);
  Int b(1);
  for (unsigned i = 0; i < k; ++i) {
    b *= n - i;
    b /= i + 1;
  }
  return b;
}

Polynomial ppow(const Polynomial& f, unsigned e) {
  Polynomial acc = Polynomial::constant(f.arity(), Rational(1));
  for (unsigned i = 0; i < e; ++i) acc = acc * f;
  return acc;
}

SymbolicIdentityReport make_report(Polynomial lhs, Polynomial rhs) {
  Polynomial diff = lhs - rhs;
  const bool eq = diff.terms().empty();
  return SymbolicIdentityReport{std::move(lhs), std::move(rhs), eq, std::move(diff)};
}

}  // namespace

SymbolicIdentityReport hw_identity_check(unsigned n) {
  if (n == 0) throw UsageError("n must be positive");
  Polynomial X(1);
  X.add_term(MultiIndex{1}, Rational(1));
  Polynomial lhs = X.scaled(Rational(factorial(n)));
  Polynomial rhs(1);
  for (unsigned h = 0; h < n; ++h) {
    const int sign = ((n - 1 - h) % 2 == 0) ? 1 : -1;
    const Rational c = Rational(binom(n - 1, h) * sign);
    const Polynomial base = X + Polynomial::constant(1, Rational(h));
    const Polynomial term = ppow(base, n) - Polynomial::constant(1, qpow(Rational(h), n));
    rhs += term.scaled(c);
  }
  return make_report(std::move(lhs), std::move(rhs));
}

std::pair<SumOfPowers, SumOfPowers> power_split(const Polynomial& a, unsigned d) {
  if (d == 0) throw UsageError("d must be positive");
  SumOfPowers plus;
  SumOfPowers minus;
  plus.d = d;
  minus.d = d;
  if (a.terms().empty()) return {std::move(plus), std::move(minus)};

  const unsigned n = 2 * d;
  const Rational nfact(factorial(n));
  Rational constant(0);
  for (unsigned h = 0; h < n; ++h) {
    const bool positive = h % 2 == 1;  // sign (-1)^(h+1) in the n!X identity
    const Rational c = Rational(binom(n - 1, h)) / nfact;
    Polynomial base = a + Polynomial::constant(a.arity(), Rational(h));
    (positive ? plus : minus).entries.emplace_back(c, std::move(base));
    const Rational corr = c * qpow(Rational(h), n);
    constant += positive ? -corr : corr;
  }
  if (constant > 0)
    plus.entries.emplace_back(constant, Polynomial::constant(a.arity(), Rational(1)));
  else if (constant < 0)
    minus.entries.emplace_back(-constant, Polynomial::constant(a.arity(), Rational(1)));

  const Polynomial diff = materialize(plus, a) - materialize(minus, a) - a;
  if (!diff.terms().empty()) throw DomainError("power split reconstruction failed");
  return {std::move(plus), std::move(minus)};
}

std::vector<SymbolicIdentityReport> basic_trick_check(unsigned n, const Polynomial& a,
                                                      const Polynomial& t, const Polynomial& r,
                                                      const Polynomial& k) {
  if (n == 0 || n % 2 != 0) throw UsageError("n must be even and positive");
  const std::size_t ar = a.arity();
  if (t.arity() != ar || r.arity() != ar || k.arity() != ar)
    throw UsageError("a, t, r, k must share one variable set");
  const Polynomial one = Polynomial::constant(ar, Rational(1));

  Polynomial sum_shift(ar);  // sum_{i=1}^n C(n,i) k^(n-i) (-t)^(i-1)
  Polynomial sum_tail(ar);   // sum_{i=2}^n C(n,i) k^(n-i) (-t)^i
  const Polynomial mt = -t;
  for (unsigned i = 1; i <= n; ++i) {
    const Rational c(binom(n, i));
    const Polynomial kp = ppow(k, n - i);
    sum_shift += (kp * ppow(mt, i - 1)).scaled(c);
    if (i >= 2) sum_tail += (kp * ppow(mt, i)).scaled(c);
  }

  std::vector<SymbolicIdentityReport> out;
  const Rational cn1(binom(n, 1));
  Polynomial lhs1 = ppow(k, n) * (a + r) - one - ppow(k - t, n) * (a + r);
  Polynomial rhs1 = -one + ppow(k, n - 1).scaled(cn1) - sum_tail * a +
                    (ppow(k, n - 1) * (a * t - one)).scaled(cn1) + r * t * sum_shift;
  out.push_back(make_report(std::move(lhs1), std::move(rhs1)));

  Polynomial rhs2(ar);
  for (unsigned j = 1; 2 * j <= n; ++j) {
    const Polynomial blk =
        k.scaled(Rational(binom(n, 2 * j - 1))) - t.scaled(Rational(binom(n, 2 * j)));
    rhs2 += ppow(k, n - 2 * j) * ppow(t, 2 * j - 2) * blk;
  }
  out.push_back(make_report(std::move(sum_shift), std::move(rhs2)));
  return out;
}

std::vector<SymbolicIdentityReport> basic_trick_check(unsigned n, const Polynomial& a,
                                                      const Polynomial& t, const Rational& r,
                                                      const Rational& k) {
  return basic_trick_check(n, a, t, Polynomial::constant(a.arity(), r),
                           Polynomial::constant(a.arity(), k));
}

}  // namespace cone
