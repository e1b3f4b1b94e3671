#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cone_closure/certificates.hpp"
#include "cone_closure/moments.hpp"
#include "cone_closure/polynomial.hpp"
#include "cone_closure/star_semigroup.hpp"
#include "cone_closure/weights.hpp"

// Line-oriented text formats. '#' starts a comment, blank lines are skipped,
// parse errors carry "path:line:". Writers emit exactly what the readers
// accept, so every artifact round-trips.

namespace cone {

using AnyCertificate = std::variant<Certificate, StarCertificate>;
using AnySum = std::variant<SumOfPowers, StarSumOfPowers>;

// header "arity=n", then one term per line "num/den : e1,...,en"
Polynomial read_polynomial(const std::string& path);
void write_polynomial(const Polynomial& f, std::ostream& os);

// header "semigroup=<kind>" + "n=<int>", then
// "re,im : e1,...,en" (free) or "re,im : p1,...,pn | q1,...,qn" (pairs)
StarElement read_element(const std::string& path);
void write_element(const StarElement& f, std::ostream& os);

// header "arity=n", then "e1,...,en : value"; validated as submultiplicative
AbsoluteValue read_phi_table(const std::string& path);
void write_phi_table(const AbsoluteValue& phi, std::ostream& os);

// same file layout without the submultiplicativity requirement, for weight
// tables that only satisfy the weak axiom
std::pair<std::size_t, std::map<MultiIndex, Rational, GradedLexLess>> read_raw_table(
    const std::string& path);

// "one" | "geo:r1[,r2,...]" (one radius replicates) | path to a table file
AbsoluteValue parse_phi_spec(const std::string& spec, std::size_t arity);

// header "n=<int>", then one point per line "q1,...,qn"
std::vector<std::vector<Rational>> read_points(const std::string& path);

// semigroup header, then "e1,...,en : re,im" / "p1,...,pn | q1,...,qn : re,im";
// degree 0 means "use the largest stored degree"
MomentFunctional read_moments(const std::string& path, unsigned degree = 0);
void write_moments(const MomentFunctional& L, std::ostream& os);

// inverse of generator_str
ModuleGenerator parse_generator(const std::string& desc, std::size_t index_arity);

AnyCertificate read_certificate(const std::string& path);
void write_certificate(const Certificate& c, std::ostream& os);
void write_certificate(const StarCertificate& c, std::ostream& os);

AnySum read_sum(const std::string& path);
void write_sum(const SumOfPowers& s, std::size_t arity, std::ostream& os);
void write_sum(const StarSumOfPowers& s, const StarSemigroup& sg, std::ostream& os);

}  // namespace cone
