#include "cone_closure/dyadic.hpp"

#include <algorithm>

#include "cone_closure/kernels.hpp"

namespace cone {

bool ScaledVec::is_zero() const {
  if (scale == 0) return true;
  return std::all_of(num.begin(), num.end(), [](const Int& v) { return v == 0; });
}

void ScaledVec::trim() {
  while (!num.empty() && num.back() == 0) num.pop_back();
}

ScaledVec svec_mul(const ScaledVec& a, const ScaledVec& b) {
  ScaledVec r;
  r.scale = a.scale * b.scale;
  r.num = kernels::conv(a.num, b.num);
  return r;
}

ScaledVec svec_pow(const ScaledVec& a, unsigned e) {
  if (e == 0) throw UsageError("svec_pow exponent must be positive");
  ScaledVec base = a;
  ScaledVec r;
  bool have = false;
  while (e) {
    if (e & 1u) {
      r = have ? svec_mul(r, base) : base;
      have = true;
    }
    e >>= 1u;
    if (e) base = svec_mul(base, base);
  }
  return r;
}

ScaledVec svec_add(const ScaledVec& a, const ScaledVec& b) {
  // Common scale g = gcd preserves integrality: x*sa + y*sb with sa = g*ma,
  // sb = g*mb (ma, mb integral after dividing by the gcd of the two scales).
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Rational g = ratio(boost::multiprecision::gcd(num(a.scale), num(b.scale)),
                     boost::multiprecision::lcm(den(a.scale), den(b.scale)));
  Int ma = num(a.scale / g);  // these divisions are exact integers
  Int mb = num(b.scale / g);
  ScaledVec r;
  r.scale = g;
  r.num.resize(std::max(a.num.size(), b.num.size()), Int(0));
  for (std::size_t i = 0; i < a.num.size(); ++i) r.num[i] += a.num[i] * ma;
  for (std::size_t i = 0; i < b.num.size(); ++i) r.num[i] += b.num[i] * mb;
  r.trim();
  return r;
}

ScaledVec svec_scale(const ScaledVec& a, const Rational& s) {
  ScaledVec r = a;
  r.scale *= s;
  if (r.scale == 0) r.num.clear();
  return r;
}

Polynomial svec_to_poly(const ScaledVec& v, std::size_t arity, const MultiIndex& dir) {
  Polynomial p(arity);
  for (std::size_t k = 0; k < v.num.size(); ++k) {
    if (v.num[k] == 0) continue;
    p.add_term(dir.scaled(static_cast<unsigned>(k)), v.scale * v.num[k]);
  }
  return p;
}

bool poly_to_svec(const Polynomial& f, const MultiIndex& dir, ScaledVec& out) {
  const unsigned dd = dir.degree();
  if (dd == 0) return false;
  Int common_den = 1;
  std::vector<std::pair<std::size_t, Rational>> entries;
  for (const auto& [m, c] : f.terms()) {
    const unsigned md = m.degree();
    if (md % dd != 0) return false;
    const unsigned k = md / dd;
    if (!(dir.scaled(k) == m)) return false;
    entries.emplace_back(k, c);
    common_den = boost::multiprecision::lcm(common_den, den(c));
  }
  out = ScaledVec{};
  out.scale = ratio(Int(1), common_den);
  if (!entries.empty()) {
    std::size_t maxk = 0;
    for (const auto& [k, c] : entries) maxk = std::max(maxk, k);
    out.num.assign(maxk + 1, Int(0));
    for (const auto& [k, c] : entries) out.num[k] = num(c) * (common_den / den(c));
  }
  return true;
}

bool common_direction(const std::vector<MultiIndex>& exps, MultiIndex& dir) {
  const MultiIndex* smallest = nullptr;
  for (const auto& m : exps) {
    if (m.is_zero()) continue;
    if (!smallest || m.degree() < smallest->degree()) smallest = &m;
  }
  if (!smallest) return false;
  const unsigned dd = smallest->degree();
  for (const auto& m : exps) {
    if (m.is_zero()) continue;
    if (m.degree() % dd != 0) return false;
    if (!(smallest->scaled(m.degree() / dd) == m)) return false;
  }
  dir = *smallest;
  return true;
}

}  // namespace cone
