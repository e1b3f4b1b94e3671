#include "cone_closure/star_semigroup.hpp"

namespace cone {

ModuleGenerator ModuleGenerator::poly_case(Rational rho, int sign, MultiIndex s) {
  if (sign != 1 && sign != -1) throw UsageError("generator sign must be +1 or -1");
  ModuleGenerator g;
  g.kind = Kind::poly;
  g.rho = std::move(rho);
  g.sign = sign;
  g.s = std::move(s);
  return g;
}

ModuleGenerator ModuleGenerator::norm_case(MultiIndex s) {
  ModuleGenerator g;
  g.kind = Kind::sg_norm;
  g.s = std::move(s);
  return g;
}

ModuleGenerator ModuleGenerator::real_case(MultiIndex s, int sign) {
  if (sign != 1 && sign != -1) throw UsageError("generator sign must be +1 or -1");
  ModuleGenerator g;
  g.kind = Kind::sg_real;
  g.sign = sign;
  g.s = std::move(s);
  return g;
}

ModuleGenerator ModuleGenerator::imag_case(MultiIndex s, int sign) {
  if (sign != 1 && sign != -1) throw UsageError("generator sign must be +1 or -1");
  ModuleGenerator g;
  g.kind = Kind::sg_imag;
  g.sign = sign;
  g.s = std::move(s);
  return g;
}

std::string generator_str(const ModuleGenerator& g) {
  const char* sgn = g.sign > 0 ? "+" : "-";
  switch (g.kind) {
    case ModuleGenerator::Kind::one:
      return "one";
    case ModuleGenerator::Kind::poly:
      return "poly rho=" + rational_str(g.rho) + " sign=" + sgn + " s=" + multiindex_str(g.s);
    case ModuleGenerator::Kind::sg_norm:
      return "norm s=" + multiindex_str(g.s);
    case ModuleGenerator::Kind::sg_real:
      return std::string("real sign=") + sgn + " s=" + multiindex_str(g.s);
    case ModuleGenerator::Kind::sg_imag:
      return std::string("imag sign=") + sgn + " s=" + multiindex_str(g.s);
  }
  return "?";
}

MultiIndex StarSemigroup::star(const MultiIndex& s) const {
  if (s.arity() != index_arity()) throw UsageError("element arity does not match the semigroup");
  if (kind == Kind::free_commutative) return s;
  MultiIndex out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.e[i] = s[i + n];
    out.e[i + n] = s[i];
  }
  return out;
}

StarElement::StarElement(StarSemigroup sg, CPolynomial poly) : sg_(sg), poly_(std::move(poly)) {
  if (poly_.arity() != sg_.index_arity())
    throw UsageError("element arity does not match the semigroup");
}

StarElement StarElement::term(StarSemigroup sg, const MultiIndex& s, const ComplexQ& c) {
  StarElement f(sg);
  f.poly_.add_term(s, c);
  return f;
}

StarElement StarElement::constant(StarSemigroup sg, const ComplexQ& c) {
  return term(sg, sg.neutral(), c);
}

void StarElement::require_same(const StarElement& o) const {
  if (!(sg_ == o.sg_)) throw UsageError("semigroup mismatch");
}

StarElement StarElement::operator+(const StarElement& o) const {
  require_same(o);
  return StarElement(sg_, poly_ + o.poly_);
}

StarElement StarElement::operator-(const StarElement& o) const {
  require_same(o);
  return StarElement(sg_, poly_ - o.poly_);
}

StarElement StarElement::operator*(const StarElement& o) const {
  require_same(o);
  return StarElement(sg_, poly_ * o.poly_);
}

StarElement& StarElement::operator+=(const StarElement& o) {
  require_same(o);
  poly_ += o.poly_;
  return *this;
}

StarElement StarElement::operator-() const { return StarElement(sg_, -poly_); }

StarElement StarElement::scaled(const ComplexQ& c) const {
  StarElement out(sg_);
  for (const auto& [s, v] : poly_.terms()) out.poly_.add_term(s, v * c);
  return out;
}

StarElement StarElement::star() const {
  StarElement out(sg_);
  for (const auto& [s, v] : poly_.terms()) out.poly_.add_term(sg_.star(s), v.conj());
  return out;
}

bool StarElement::is_symmetric() const {
  for (const auto& [s, v] : poly_.terms())
    if (!(poly_.coeff(sg_.star(s)) == v.conj())) return false;
  return true;
}

std::pair<StarElement, StarElement> StarElement::symmetric_split() const {
  const StarElement adj = star();
  const ComplexQ half(Rational(1, 2), Rational(0));
  const ComplexQ minus_half_i(Rational(0), Rational(-1, 2));
  StarElement g = (*this + adj).scaled(half);
  StarElement h = (*this - adj).scaled(minus_half_i);
  return {std::move(g), std::move(h)};
}

StarElement power_2d(const StarElement& f, unsigned d) {
  return StarElement(f.semigroup(), pow_2d(f.poly(), d));
}

Semicharacter Semicharacter::real_point(StarSemigroup sg, std::vector<Rational> x) {
  if (x.size() != sg.n) throw UsageError("semicharacter point arity mismatch");
  Semicharacter a;
  a.sg = sg;
  a.z.reserve(x.size());
  for (auto& xi : x) a.z.emplace_back(std::move(xi), Rational(0));
  return a;
}

Semicharacter Semicharacter::complex_point(StarSemigroup sg, std::vector<ComplexQ> z) {
  if (z.size() != sg.n) throw UsageError("semicharacter point arity mismatch");
  if (sg.kind == StarSemigroup::Kind::free_commutative)
    for (const auto& zi : z)
      if (!zi.is_real())
        throw UsageError("free-commutative semicharacters take real points");
  Semicharacter a;
  a.sg = sg;
  a.z = std::move(z);
  return a;
}

ComplexQ Semicharacter::eval_index(const MultiIndex& s) const {
  if (s.arity() != sg.index_arity()) throw UsageError("element arity does not match the semigroup");
  ComplexQ v(Rational(1), Rational(0));
  for (std::size_t i = 0; i < sg.n; ++i) {
    v = v * cpow(z[i], s[i]);
    if (sg.kind == StarSemigroup::Kind::conjugate_pair) v = v * cpow(z[i].conj(), s[i + sg.n]);
  }
  return v;
}

ComplexQ Semicharacter::eval(const StarElement& f) const {
  if (!(f.semigroup() == sg)) throw UsageError("semigroup mismatch");
  ComplexQ acc;
  for (const auto& [s, c] : f.poly().terms()) acc += c * eval_index(s);
  return acc;
}

std::vector<ModuleGenerator> module_generators(const StarSemigroup& sg,
                                               const std::vector<MultiIndex>& support) {
  std::vector<ModuleGenerator> out;
  out.reserve(5 * support.size());
  for (const auto& s : support) {
    if (s.arity() != sg.index_arity())
      throw UsageError("support element arity does not match the semigroup");
    out.push_back(ModuleGenerator::norm_case(s));
    out.push_back(ModuleGenerator::real_case(s, +1));
    out.push_back(ModuleGenerator::real_case(s, -1));
    out.push_back(ModuleGenerator::imag_case(s, +1));
    out.push_back(ModuleGenerator::imag_case(s, -1));
  }
  return out;
}

StarElement materialize_star(const ModuleGenerator& g, const AbsoluteValue& phi,
                             const StarSemigroup& sg) {
  const ComplexQ one(Rational(1), Rational(0));
  const ComplexQ i_unit(Rational(0), Rational(1));
  switch (g.kind) {
    case ModuleGenerator::Kind::one:
      return StarElement::constant(sg, one);
    case ModuleGenerator::Kind::poly: {
      StarElement m = StarElement::constant(sg, ComplexQ(g.rho));
      m.add_term(g.s, ComplexQ(Rational(g.sign)));
      return m;
    }
    case ModuleGenerator::Kind::sg_norm: {
      const Rational p = phi(g.s);
      StarElement m = StarElement::constant(sg, ComplexQ(p * p));
      m.add_term(g.s + sg.star(g.s), -one);
      return m;
    }
    case ModuleGenerator::Kind::sg_real: {
      StarElement m = StarElement::constant(sg, ComplexQ(2 * phi(g.s)));
      const ComplexQ w = g.sign > 0 ? one : -one;
      m.add_term(g.s, w);
      m.add_term(sg.star(g.s), w);
      return m;
    }
    case ModuleGenerator::Kind::sg_imag: {
      StarElement m = StarElement::constant(sg, ComplexQ(2 * phi(g.s)));
      const MultiIndex st = sg.star(g.s);
      if (st == g.s) return m;  // i(s - s*) vanishes
      const ComplexQ w = g.sign > 0 ? i_unit : -i_unit;
      m.add_term(g.s, w);
      m.add_term(st, -w);
      return m;
    }
  }
  throw DomainError("unreachable generator kind");
}

}  // namespace cone
