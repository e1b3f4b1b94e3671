#include "cone_closure/weights.hpp"

#include <string>
#include <utility>

namespace cone {

namespace {

// Odometer over the box {t : 0 <= t <= s componentwise}, including 0 and s.
bool next_sub_index(MultiIndex& t, const MultiIndex& s) {
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (t[i] < s[i]) {
      ++t.e[i];
      return true;
    }
    t.e[i] = 0;
  }
  return false;
}

}  // namespace

AbsoluteValue AbsoluteValue::one(std::size_t arity) {
  AbsoluteValue phi;
  phi.kind_ = PhiKind::one;
  phi.arity_ = arity;
  return phi;
}

AbsoluteValue AbsoluteValue::geometric(std::vector<Rational> radii) {
  if (radii.empty()) throw UsageError("geometric weight needs at least one radius");
  for (const auto& r : radii)
    if (r <= 0) throw UsageError("geometric weight radii must be positive");
  AbsoluteValue phi;
  phi.kind_ = PhiKind::geometric;
  phi.arity_ = radii.size();
  phi.radii_ = std::move(radii);
  return phi;
}

AbsoluteValue AbsoluteValue::table(std::size_t arity, Table entries) {
  AbsoluteValue phi;
  phi.kind_ = PhiKind::table;
  phi.arity_ = arity;
  const MultiIndex zero(arity);
  if (!entries.count(zero)) entries[zero] = Rational(1);
  for (const auto& [s, v] : entries) {
    if (s.arity() != arity) throw UsageError("weight table index arity mismatch at " + multiindex_str(s));
    if (v < 0) throw UsageError("weight table value is negative at " + multiindex_str(s));
    phi.degree_bound_ = std::max(phi.degree_bound_, s.degree());
  }
  if (entries.at(zero) < 1)
    throw UsageError("weight table needs value >= 1 at the zero index");
  for (const auto& [s, vs] : entries) {
    for (const auto& [t, vt] : entries) {
      if (GradedLexLess{}(t, s)) continue;  // unordered pairs once
      auto it = entries.find(s + t);
      if (it == entries.end()) continue;
      if (it->second > vs * vt)
        throw UsageError("weight table is not submultiplicative at " + multiindex_str(s) + " + " +
                         multiindex_str(t));
    }
  }
  phi.entries_ = std::move(entries);
  return phi;
}

bool AbsoluteValue::has_entry(const MultiIndex& s) const {
  return kind_ != PhiKind::table || entries_.count(s) > 0;
}

Rational AbsoluteValue::operator()(const MultiIndex& s) const {
  if (s.arity() != arity_) throw UsageError("weight evaluated at wrong index arity");
  switch (kind_) {
    case PhiKind::one:
      return Rational(1);
    case PhiKind::geometric: {
      Rational v(1);
      for (std::size_t i = 0; i < arity_; ++i) v *= qpow(radii_[i], s[i]);
      return v;
    }
    case PhiKind::table: {
      auto it = entries_.find(s);
      if (it == entries_.end())
        throw DomainError("weight table has no entry for index " + multiindex_str(s));
      return it->second;
    }
  }
  throw DomainError("unreachable weight kind");
}

WeightFunction::WeightFunction(AbsoluteValue base, Rational shift)
    : base_(std::move(base)), shift_(std::move(shift)) {
  if (shift_ < 0) throw UsageError("weight shift must be nonnegative");
}

KphiResult kphi_membership(const std::vector<Rational>& x, const AbsoluteValue& phi,
                           unsigned depth) {
  if (x.size() != phi.arity()) throw UsageError("point arity does not match the weight");
  if (depth < 1) throw UsageError("membership depth must be >= 1");
  auto check = [&](const MultiIndex& s, const Rational& bound) -> bool {
    Rational p(1);
    for (std::size_t i = 0; i < x.size(); ++i) p *= qpow(x[i], s[i]);
    return qabs(p) <= bound;
  };
  if (phi.kind() == PhiKind::table) {
    for (const auto& [s, v] : phi.entries()) {
      if (s.degree() > depth) break;  // graded order
      if (!check(s, v)) return {false, s};
    }
    return {true, MultiIndex(phi.arity())};
  }
  for (const auto& s : indices_up_to(phi.arity(), depth))
    if (!check(s, phi(s))) return {false, s};
  return {true, MultiIndex(phi.arity())};
}

KphiResult kphi_membership_complex(const std::vector<ComplexQ>& z, const AbsoluteValue& phi,
                                   unsigned depth) {
  if (2 * z.size() != phi.arity())
    throw UsageError("complex point arity does not match the weight");
  if (depth < 1) throw UsageError("membership depth must be >= 1");
  // |z^p conj(z)^q|^2 = prod |z_i|^(2(p_i+q_i)), compared against phi(s)^2.
  auto check = [&](const MultiIndex& s, const Rational& bound) -> bool {
    Rational p(1);
    for (std::size_t i = 0; i < z.size(); ++i) p *= qpow(z[i].norm_sq(), s[i] + s[i + z.size()]);
    return p <= bound * bound;
  };
  if (phi.kind() == PhiKind::table) {
    for (const auto& [s, v] : phi.entries()) {
      if (s.degree() > depth) break;
      if (!check(s, v)) return {false, s};
    }
    return {true, MultiIndex(phi.arity())};
  }
  for (const auto& s : indices_up_to(phi.arity(), depth))
    if (!check(s, phi(s))) return {false, s};
  return {true, MultiIndex(phi.arity())};
}

WeakAbsoluteValue::WeakAbsoluteValue(std::size_t arity, std::vector<unsigned> involution,
                                     Table entries)
    : arity_(arity), involution_(std::move(involution)), entries_(std::move(entries)) {
  if (involution_.size() != arity_) throw UsageError("involution permutation has wrong length");
  for (std::size_t i = 0; i < arity_; ++i) {
    if (involution_[i] >= arity_ || involution_[involution_[i]] != i)
      throw UsageError("involution must be a self-inverse coordinate permutation");
  }
  for (const auto& [s, v] : entries_) {
    if (s.arity() != arity_) throw UsageError("weight table index arity mismatch at " + multiindex_str(s));
    if (v < 0) throw UsageError("weight table value is negative at " + multiindex_str(s));
    degree_bound_ = std::max(degree_bound_, s.degree());
  }
  const auto ball = indices_up_to(arity_, degree_bound_);
  for (const auto& s : ball) {
    if (!entries_.count(s))
      throw UsageError("weak weight table must cover the full degree ball; missing " +
                       multiindex_str(s));
  }
  for (const auto& s : ball) {
    if (2 * s.degree() > degree_bound_) continue;
    const Rational& v = entries_.at(s);
    if (entries_.at(s + star(s)) > v * v)
      throw UsageError("weak weight axiom fails at " + multiindex_str(s));
  }
  degenerate_ = entries_.at(MultiIndex(arity_)) < 1;

  // psi(s) = min(m(s), min over proper nonzero splits psi(t) psi(s-t)),
  // filled in graded order so both halves are already known.
  for (const auto& s : ball) {
    if (degenerate_) {
      psi_[s] = Rational(0);
      continue;
    }
    Rational best = value(s);
    MultiIndex t(arity_);
    while (next_sub_index(t, s)) {
      if (t == s) continue;
      const MultiIndex rest = s.minus(t);
      if (graded_lex_less(rest, t)) continue;  // each split once
      Rational cand = psi_.at(t) * psi_.at(rest);
      if (cand < best) best = cand;
    }
    psi_[s] = best;
  }
}

WeakAbsoluteValue WeakAbsoluteValue::from_absolute_value(const AbsoluteValue& phi,
                                                         unsigned degree_bound,
                                                         std::vector<unsigned> involution) {
  Table entries;
  for (const auto& s : indices_up_to(phi.arity(), degree_bound)) entries[s] = phi(s);
  return WeakAbsoluteValue(phi.arity(), std::move(involution), std::move(entries));
}

MultiIndex WeakAbsoluteValue::star(const MultiIndex& s) const {
  MultiIndex out(arity_);
  for (std::size_t i = 0; i < arity_; ++i) out.e[involution_[i]] = s[i];
  return out;
}

Rational WeakAbsoluteValue::raw(const MultiIndex& s) const {
  auto it = entries_.find(s);
  if (it == entries_.end())
    throw DomainError("weak weight table has no entry for index " + multiindex_str(s));
  return it->second;
}

Rational WeakAbsoluteValue::value(const MultiIndex& s) const { return qmin(raw(s), raw(star(s))); }

Rational WeakAbsoluteValue::phi_prime(const MultiIndex& s) const {
  auto it = psi_.find(s);
  if (it == psi_.end())
    throw DomainError("phi-prime is only tabulated up to degree " + std::to_string(degree_bound_));
  return it->second;
}

}  // namespace cone
