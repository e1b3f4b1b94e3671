#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cone_closure/certificates.hpp"

namespace cone {

// One PSD block: the Gram matrix of the multiplier attached to gen, indexed
// by the monomials in basis.
struct GramBlock {
  ModuleGenerator gen;
  Polynomial m;  // materialized generator
  std::vector<MultiIndex> basis;
  std::size_t var_offset = 0;

  std::size_t dim() const { return basis.size(); }
  std::size_t var_count() const { return basis.size() * (basis.size() + 1) / 2; }
};

// Search space for f + eps/2 = sum_i sigma_i m_i + rho over all generators
// indexed by |s| <= degree, with multiplier degrees chosen so every product
// stays inside the degree ball.
struct GramProblem {
  Polynomial target;
  Rational slack;
  AbsoluteValue phi;
  unsigned degree = 0;
  std::vector<GramBlock> blocks;
  std::vector<MultiIndex> rows;  // coefficient constraints, graded-lex order
  std::size_t total_vars = 0;
};

GramProblem gram_problem(const Polynomial& f, const AbsoluteValue& phi, const Rational& eps,
                         unsigned degree_bound);

struct SolverOptions {
  unsigned max_iterations = 100000;
  double tol = 1e-9;                 // alternating-projection convergence target
  unsigned extraction_period = 250;  // rationalization attempt cadence
  std::uint64_t time_budget_ms = 0;  // 0 = no limit
};

struct InfeasibleReport {
  unsigned iterations = 0;
  double affine_residual = 0;
  double psd_violation = 0;
  bool attempted_extraction = false;
  Rational best_residual_norm{-1};  // smallest exact ||rho|| over attempts, -1 if none
  std::string message;
};

using FindResult = std::variant<Certificate, InfeasibleReport>;

FindResult solve(const GramProblem& pb, const SolverOptions& opts = {});

FindResult find_certificate(const Polynomial& f, const AbsoluteValue& phi, const Rational& eps,
                            unsigned degree_bound, const SolverOptions& opts = {});

}  // namespace cone
