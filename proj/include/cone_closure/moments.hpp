#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cone_closure/star_semigroup.hpp"
#include "cone_closure/weights.hpp"

namespace cone {

// *-linear functional on the semigroup algebra, given by its values on a
// degree-bounded set of indices. Closed under the involution with
// L(s*) = conj(L(s)); missing mirror entries are filled at construction.
class MomentFunctional {
 public:
  using Table = std::map<MultiIndex, ComplexQ, GradedLexLess>;

  MomentFunctional(StarSemigroup sg, Table values, unsigned degree);

  const StarSemigroup& semigroup() const { return sg_; }
  unsigned degree() const { return degree_; }
  const Table& values() const { return vals_; }

  bool has(const MultiIndex& s) const { return vals_.count(s) != 0; }
  ComplexQ operator()(const MultiIndex& s) const;

  // sum_s f_s L(s); UsageError when f's support overflows the table
  ComplexQ apply(const StarElement& f) const;

 private:
  StarSemigroup sg_;
  Table vals_;
  unsigned degree_ = 0;
};

struct DiscreteMeasure {
  StarSemigroup sg;
  std::vector<std::pair<Rational, Semicharacter>> atoms;  // weight > 0

  Rational mass() const;

  // Validating constructor: positive weights, every atom inside the
  // degree-checked outer set of the weight.
  static DiscreteMeasure checked(StarSemigroup sg,
                                 std::vector<std::pair<Rational, Semicharacter>> atoms,
                                 const AbsoluteValue& phi, unsigned depth);
};

// Exact moments L(s) = sum_j w_j alpha_j(s) for all |s| <= degree; the total
// mass is L at the neutral index.
MomentFunctional functional_from_measure(const DiscreteMeasure& mu, unsigned degree);

struct HankelPsd {
  double min_eigenvalue = 0;
};
struct HankelWitness {
  double min_eigenvalue = 0;
  std::vector<MultiIndex> basis;
  std::vector<ComplexQ> coeffs;  // p over basis, exact rational components
  Rational value;                // exact L(p p*), negative
};
using HankelResult = std::variant<HankelPsd, HankelWitness>;

// H[s][t] = L(s t*) over all |s|,|t| <= degree, eigenvalues by cyclic Jacobi
// on the real embedding [[Re, -Im], [Im, Re]]. A not_psd verdict carries a
// witness whose negativity is rechecked in exact arithmetic.
HankelResult hankel_psd_check(const MomentFunctional& L, unsigned degree, double tol = 1e-9);

struct MomentCheckOptions {
  Rational power_tol{1, 1000000000};
  unsigned random_probes = 100;
  unsigned probe_degree = 0;  // 0: derived from L's degree and d
  std::uint64_t seed = 20260816;
};

struct MomentConditionReport {
  bool bound_ok = true;
  bool power_ok = true;
  bool cs_ok = true;
  std::string detail;  // first failure, human-readable
};

// bound: |L(s)| <= C phi(s) on the table domain (exact, via squares);
// power: L(p^(2d)) >= -tol for the given probes plus sampled random
// symmetric elements (necessary-condition sampling, never a proof);
// cs: |L(st*)|^2 <= L(ss*) L(tt*) for all in-domain pairs (exact).
MomentConditionReport moment_condition_check(const MomentFunctional& L, const AbsoluteValue& phi,
                                             const Rational& C, unsigned d,
                                             const std::vector<StarElement>& probes,
                                             const MomentCheckOptions& opts = {});

}  // namespace cone
