#pragma once

#include <string>

#include "cone_closure/multiindex.hpp"
#include "cone_closure/rational.hpp"

namespace cone {

// One archimedean-module generator. The polynomial-ring family is
// rho + sign*X^s with rho >= phi(s); the *-semigroup families are
// phi(s)^2 - ss*, 2phi(s) +- (s+s*) and 2phi(s) +- i(s-s*).
struct ModuleGenerator {
  enum class Kind { one, poly, sg_norm, sg_real, sg_imag };

  Kind kind = Kind::one;
  Rational rho;  // poly kind only
  int sign = 1;  // poly, sg_real, sg_imag
  MultiIndex s;

  static ModuleGenerator constant_one() { return {}; }
  static ModuleGenerator poly_case(Rational rho, int sign, MultiIndex s);
  static ModuleGenerator norm_case(MultiIndex s);
  static ModuleGenerator real_case(MultiIndex s, int sign);
  static ModuleGenerator imag_case(MultiIndex s, int sign);

  bool operator==(const ModuleGenerator& o) const {
    return kind == o.kind && rho == o.rho && sign == o.sign && s == o.s;
  }
};

std::string generator_str(const ModuleGenerator& g);

}  // namespace cone
