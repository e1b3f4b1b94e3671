#include "cone_closure/gram_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <utility>

#include "cone_closure/numeric.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cone {

namespace {

std::size_t tri_index(std::size_t a, std::size_t b) { return b * (b + 1) / 2 + a; }  // a <= b

struct Column {
  std::vector<std::pair<std::size_t, Rational>> rows;
  std::vector<std::pair<std::size_t, double>> rows_d;
  Rational winv;  // inverse Frobenius weight: 1 on the diagonal, 1/2 off it
  double winv_d = 1.0;
};

struct System {
  std::vector<Column> cols;
  std::vector<Rational> b;
  std::vector<double> b_d;
};

System build_system(const GramProblem& pb) {
  std::map<MultiIndex, std::size_t, GradedLexLess> row_of;
  for (std::size_t i = 0; i < pb.rows.size(); ++i) row_of.emplace(pb.rows[i], i);

  System sys;
  sys.cols.resize(pb.total_vars);
  for (const GramBlock& blk : pb.blocks) {
    const std::size_t nb = blk.basis.size();
    for (std::size_t bb = 0; bb < nb; ++bb) {
      for (std::size_t aa = 0; aa <= bb; ++aa) {
        Column& col = sys.cols[blk.var_offset + tri_index(aa, bb)];
        const bool diag = aa == bb;
        col.winv = diag ? Rational(1) : Rational(1) / 2;
        const Rational mult = diag ? Rational(1) : Rational(2);
        const MultiIndex base = blk.basis[aa] + blk.basis[bb];
        for (const auto& [t, c] : blk.m.terms()) {
          const auto it = row_of.find(base + t);
          if (it == row_of.end()) throw DomainError("product degree escapes the constraint ball");
          col.rows.emplace_back(it->second, mult * c);
        }
        std::sort(col.rows.begin(), col.rows.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
      }
    }
  }
  sys.b.reserve(pb.rows.size());
  for (const MultiIndex& u : pb.rows)
    sys.b.push_back(pb.target.coeff(u) + (u.is_zero() ? pb.slack / 2 : Rational(0)));

  sys.b_d.reserve(sys.b.size());
  for (const Rational& q : sys.b) sys.b_d.push_back(to_double(q));
  for (Column& col : sys.cols) {
    col.winv_d = to_double(col.winv);
    col.rows_d.reserve(col.rows.size());
    for (const auto& [r, c] : col.rows) col.rows_d.emplace_back(r, to_double(c));
  }
  return sys;
}

// Least-squares corrector for the affine constraints, built once: the normal
// matrix A W^-1 A^T is fixed, so its spectral pseudo-inverse is reused every
// iteration.
struct AffineProjector {
  const System* sys = nullptr;
  EigenDecomposition eig;
  double cut = 0;

  explicit AffineProjector(const System& s) : sys(&s) {
    const std::size_t nr = s.b.size();
    SymMat m(nr);
    for (const Column& col : s.cols)
      for (const auto& [r1, c1] : col.rows_d)
        for (const auto& [r2, c2] : col.rows_d) m.at(r1, r2) += col.winv_d * c1 * c2;
    eig = jacobi_eigen(m);
    double lam_max = 0;
    for (double v : eig.values) lam_max = std::max(lam_max, v);
    cut = lam_max * 1e-12;
  }

  void residual(const std::vector<double>& x, std::vector<double>& r) const {
    const std::size_t nr = sys->b.size();
    r.assign(nr, 0.0);
    for (std::size_t j = 0; j < sys->cols.size(); ++j) {
      const double xv = x[j];
      if (xv == 0) continue;
      for (const auto& [ri, c] : sys->cols[j].rows_d) r[ri] += c * xv;
    }
    for (std::size_t i = 0; i < nr; ++i) r[i] -= sys->b_d[i];
  }

  void project(std::vector<double>& x) const {
    const std::size_t nr = sys->b.size();
    std::vector<double> r;
    residual(x, r);
    std::vector<double> z(nr, 0.0);
    for (std::size_t k = 0; k < nr; ++k) {
      if (eig.values[k] <= cut) continue;
      double dot = 0;
      for (std::size_t i = 0; i < nr; ++i) dot += eig.vectors.at(i, k) * r[i];
      z[k] = dot / eig.values[k];
    }
    std::vector<double> y(nr, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
      double acc = 0;
      for (std::size_t k = 0; k < nr; ++k) acc += eig.vectors.at(i, k) * z[k];
      y[i] = acc;
    }
    for (std::size_t j = 0; j < sys->cols.size(); ++j) {
      double dot = 0;
      for (const auto& [ri, c] : sys->cols[j].rows_d) dot += c * y[ri];
      x[j] -= sys->cols[j].winv_d * dot;
    }
  }
};

void psd_project_blocks(const GramProblem& pb, std::vector<double>& v) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(pb.blocks.size()); ++bi) {
    const GramBlock& blk = pb.blocks[static_cast<std::size_t>(bi)];
    const std::size_t nb = blk.dim();
    SymMat q(nb);
    for (std::size_t b2 = 0; b2 < nb; ++b2)
      for (std::size_t a = 0; a <= b2; ++a)
        q.set_sym(a, b2, v[blk.var_offset + tri_index(a, b2)]);
    const SymMat pr = psd_project(q);
    for (std::size_t b2 = 0; b2 < nb; ++b2)
      for (std::size_t a = 0; a <= b2; ++a)
        v[blk.var_offset + tri_index(a, b2)] = pr.at(a, b2);
  }
}

double min_block_eig(const GramProblem& pb, const std::vector<double>& v) {
  double worst = 0;
  for (const GramBlock& blk : pb.blocks) {
    const std::size_t nb = blk.dim();
    SymMat q(nb);
    for (std::size_t b2 = 0; b2 < nb; ++b2)
      for (std::size_t a = 0; a <= b2; ++a)
        q.set_sym(a, b2, v[blk.var_offset + tri_index(a, b2)]);
    worst = std::min(worst, min_eigenvalue(q));
  }
  return worst;
}

// Exact least-squares re-projection of xs onto {A x = b} over the nonzero
// support; false when the constraints are inconsistent on that support.
bool reproject(const System& sys, std::vector<Rational>& xs,
               const std::vector<std::size_t>& support) {
  const std::size_t nr = sys.b.size();
  std::vector<Rational> rhs(nr, Rational(0));
  for (const std::size_t j : support)
    for (const auto& [ri, c] : sys.cols[j].rows) rhs[ri] += c * xs[j];
  for (std::size_t i = 0; i < nr; ++i) rhs[i] -= sys.b[i];

  bool clean = true;
  for (const Rational& q : rhs)
    if (!(q == 0)) {
      clean = false;
      break;
    }
  if (clean) return true;

  std::vector<std::vector<Rational>> m(nr, std::vector<Rational>(nr, Rational(0)));
  for (const std::size_t j : support) {
    const Column& col = sys.cols[j];
    for (const auto& [r1, c1] : col.rows)
      for (const auto& [r2, c2] : col.rows) m[r1][r2] += col.winv * c1 * c2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nr && rank < nr; ++c) {
    std::size_t pr = rank;
    while (pr < nr && m[pr][c] == 0) ++pr;
    if (pr == nr) continue;
    std::swap(m[pr], m[rank]);
    std::swap(rhs[pr], rhs[rank]);
    for (std::size_t r = rank + 1; r < nr; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t cc = c; cc < nr; ++cc) m[r][cc] -= f * m[rank][cc];
      rhs[r] -= f * rhs[rank];
    }
    pivots.emplace_back(rank, c);
    ++rank;
  }
  for (std::size_t r = rank; r < nr; ++r)
    if (!(rhs[r] == 0)) return false;

  std::vector<Rational> y(nr, Rational(0));
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto [r, c] = *it;
    Rational v = rhs[r];
    for (std::size_t cc = c + 1; cc < nr; ++cc)
      if (!(m[r][cc] == 0) && !(y[cc] == 0)) v -= m[r][cc] * y[cc];
    y[c] = v / m[r][c];
  }

  for (const std::size_t j : support) {
    const Column& col = sys.cols[j];
    Rational dot(0);
    for (const auto& [ri, c] : col.rows) dot += c * y[ri];
    xs[j] -= col.winv * dot;
  }
  return true;
}

// Exact pivoted outer-product factorization; negative directions are left
// behind (they land in the certificate residual, where the exact check
// decides).
std::vector<std::pair<Rational, Polynomial>> ldl_extract(std::vector<std::vector<Rational>> s,
                                                         const std::vector<MultiIndex>& basis,
                                                         std::size_t arity) {
  const std::size_t n = s.size();
  std::vector<bool> done(n, false);
  std::vector<std::pair<Rational, Polynomial>> out;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && (p == n || s[i][i] > s[p][p])) p = i;
    if (p == n || !(s[p][p] > 0)) break;
    const Rational d = s[p][p];
    Polynomial h(arity);
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || s[j][p] == 0) continue;
      h.add_term(basis[j], s[j][p] / d);
    }
    out.emplace_back(d, std::move(h));
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == p) continue;
      if (s[i][p] == 0) continue;
      const Rational fi = s[i][p] / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || j == p) continue;
        if (s[j][p] == 0) continue;
        s[i][j] -= fi * s[j][p];
      }
    }
    done[p] = true;
  }
  return out;
}

struct Attempt {
  std::uint64_t den;
  double freeze;
};

constexpr Attempt kSchedule[] = {
    {std::uint64_t(1) << 8, 0x1p-7},
    {std::uint64_t(1) << 16, 0x1p-13},
    {std::uint64_t(1) << 24, 0x1p-21},
    {std::uint64_t(1) << 32, 0.0},
};

std::optional<Certificate> try_extract(const GramProblem& pb, const System& sys,
                                       const std::vector<double>& x, const Rational& max_rho,
                                       InfeasibleReport& rep) {
  for (const Attempt& at : kSchedule) {
    std::vector<Rational> xs(pb.total_vars, Rational(0));
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < pb.total_vars; ++i) {
      if (std::fabs(x[i]) <= at.freeze) continue;
      xs[i] = cf_round(x[i], at.den);
      if (xs[i] == 0) continue;
      support.push_back(i);
    }
    if (!reproject(sys, xs, support)) continue;

    std::vector<std::pair<SumOfPowers, ModuleGenerator>> pairs;
    Polynomial acc(pb.target.arity());
    for (const GramBlock& blk : pb.blocks) {
      const std::size_t nb = blk.dim();
      std::vector<std::vector<Rational>> q(nb, std::vector<Rational>(nb, Rational(0)));
      bool nonzero = false;
      for (std::size_t b2 = 0; b2 < nb; ++b2)
        for (std::size_t a = 0; a <= b2; ++a) {
          const Rational& v = xs[blk.var_offset + tri_index(a, b2)];
          if (!(v == 0)) nonzero = true;
          q[a][b2] = v;
          q[b2][a] = v;
        }
      if (!nonzero) continue;
      SumOfPowers g;
      g.d = 1;
      g.entries = ldl_extract(std::move(q), blk.basis, pb.target.arity());
      if (g.entries.empty()) continue;
      acc += materialize(g, pb.target) * blk.m;
      pairs.emplace_back(std::move(g), blk.gen);
    }
    Polynomial rho =
        pb.target + Polynomial::constant(pb.target.arity(), pb.slack / 2) - acc;
    Certificate cert{pb.target, pb.slack, std::move(pairs), std::move(rho)};
    const VerifyResult<Polynomial> vr = verify_certificate(cert, pb.phi);
    rep.attempted_extraction = true;
    if (rep.best_residual_norm < 0 || vr.residual_norm < rep.best_residual_norm)
      rep.best_residual_norm = vr.residual_norm;
    if (vr.valid && !(vr.residual_norm > max_rho)) return cert;
  }
  return std::nullopt;
}

}  // namespace

GramProblem gram_problem(const Polynomial& f, const AbsoluteValue& phi, const Rational& eps,
                         unsigned degree_bound) {
  if (f.arity() != phi.arity()) throw UsageError("weight arity does not match the polynomial");
  if (eps < 0) throw UsageError("slack must be nonnegative");

  unsigned deg_f = 0;
  for (const auto& [s, c] : f.terms())
    if (!(c == 0)) deg_f = std::max(deg_f, s.degree());

  GramProblem pb{f, eps, phi, std::max(deg_f, degree_bound), {}, {}, 0};
  pb.rows = indices_up_to(f.arity(), pb.degree);

  const auto add_block = [&](ModuleGenerator g, unsigned gen_deg) {
    GramBlock blk;
    blk.gen = std::move(g);
    blk.m = materialize_generator(blk.gen, phi, f);
    blk.basis = indices_up_to(f.arity(), (pb.degree - gen_deg) / 2);
    blk.var_offset = pb.total_vars;
    pb.total_vars += blk.var_count();
    pb.blocks.push_back(std::move(blk));
  };
  add_block(ModuleGenerator::constant_one(), 0);
  for (const MultiIndex& s : indices_up_to(f.arity(), pb.degree)) {
    if (s.is_zero()) continue;
    add_block(ModuleGenerator::poly_case(phi(s), 1, s), s.degree());
    add_block(ModuleGenerator::poly_case(phi(s), -1, s), s.degree());
  }
  return pb;
}

FindResult solve(const GramProblem& pb, const SolverOptions& opts) {
  const System sys = build_system(pb);
  const AffineProjector affine(sys);

  std::vector<double> x(pb.total_vars, 0.0);
  std::vector<double> p(pb.total_vars, 0.0);
  std::vector<double> q(pb.total_vars, 0.0);
  std::vector<double> y(pb.total_vars, 0.0);
  std::vector<double> rbuf;

  InfeasibleReport rep;
  const auto t0 = std::chrono::steady_clock::now();
  const auto budget_spent = [&] {
    if (opts.time_budget_ms == 0) return false;
    const auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    return static_cast<std::uint64_t>(dt.count()) >= opts.time_budget_ms;
  };

  for (unsigned iter = 1; iter <= opts.max_iterations; ++iter) {
    rep.iterations = iter;

    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + p[i];
    psd_project_blocks(pb, y);
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + p[i] - y[i];

    affine.residual(y, rbuf);
    double aff_res = 0;
    for (double v : rbuf) aff_res = std::max(aff_res, std::fabs(v));
    rep.affine_residual = aff_res;

    for (std::size_t i = 0; i < x.size(); ++i) x[i] = y[i] + q[i];
    affine.project(x);
    for (std::size_t i = 0; i < x.size(); ++i) q[i] = y[i] + q[i] - x[i];

    const bool checkpoint = iter % opts.extraction_period == 0 || iter == opts.max_iterations;
    const bool converged = aff_res <= opts.tol;
    if (converged || checkpoint) {
      rep.psd_violation = min_block_eig(pb, x);
      if (converged && rep.psd_violation >= -opts.tol) {
        if (auto cert = try_extract(pb, sys, x, pb.slack / 4, rep)) return *cert;
        // numerically feasible but not exactly recoverable yet; keep polishing
      } else if (checkpoint) {
        // not converged: only accept comfortably-inside-budget extractions
        if (auto cert = try_extract(pb, sys, x, pb.slack / 8, rep)) return *cert;
      }
    }
    if ((iter & 63u) == 0 && budget_spent()) {
      rep.message = "time budget exhausted";
      if (auto cert = try_extract(pb, sys, x, pb.slack / 4, rep)) return *cert;
      rep.psd_violation = min_block_eig(pb, x);
      return rep;
    }
  }
  if (auto cert = try_extract(pb, sys, x, pb.slack / 4, rep)) return *cert;
  rep.psd_violation = min_block_eig(pb, x);
  if (rep.message.empty()) rep.message = "iteration budget exhausted without an exact certificate";
  return rep;
}

FindResult find_certificate(const Polynomial& f, const AbsoluteValue& phi, const Rational& eps,
                            unsigned degree_bound, const SolverOptions& opts) {
  return solve(gram_problem(f, phi, eps, degree_bound), opts);
}

}  // namespace cone
