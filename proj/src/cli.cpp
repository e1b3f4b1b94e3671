#include "cone_closure/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "cone_closure/certificates.hpp"
#include "cone_closure/gram_solver.hpp"
#include "cone_closure/identity_lab.hpp"
#include "cone_closure/io.hpp"
#include "cone_closure/moments.hpp"
#include "cone_closure/root_series.hpp"
#include "cone_closure/weights.hpp"

namespace cone {
namespace {

MultiIndex parse_index_infer(const std::string& s) {
  const std::size_t n = static_cast<std::size_t>(std::count(s.begin(), s.end(), ',')) + 1;
  return parse_multiindex(s, n);
}

std::vector<Rational> parse_rat_list(const std::string& s) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) out.push_back(parse_rational(item));
  return out;
}

int parse_sign(const std::string& s) {
  if (s == "+") return 1;
  if (s == "-") return -1;
  throw UsageError("sign must be + or -");
}

void with_output(const std::string& out, const std::function<void(std::ostream&)>& fn) {
  if (out.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(out);
  if (!os) throw UsageError("cannot write " + out);
  fn(os);
  std::cout << "wrote " << out << "\n";
}

int cmd_seminorm(const RunConfig& cfg) {
  const Polynomial f = read_polynomial(cfg.poly_path);
  const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, f.arity());
  std::cout << "seminorm = " << rational_str(seminorm(f, phi)) << "\n";
  return 0;
}

int cmd_expand_root(const RunConfig& cfg) {
  const Rational r = parse_rational(cfg.r_str);
  const int sign = parse_sign(cfg.sign_str);
  const MultiIndex s = parse_index_infer(cfg.s_str);
  const Rational tol = parse_rational(cfg.tol_str);
  if (!(tol > 0)) throw UsageError("tolerance must be positive");
  const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, s.arity());
  const unsigned bits = cfg.bits ? cfg.bits : default_precision_bits();
  const auto [h, tb] = expand_root_monomial_auto(r, sign, s, cfg.d, tol, phi, bits);
  with_output(cfg.out_path, [&](std::ostream& os) { write_polynomial(h, os); });
  std::cout << "# order " << tb.order << ", tail bound " << rational_str(tb.bound)
            << " at weight " << rational_str(tb.weight) << "\n";
  return 0;
}

template <class E>
void print_verify(const VerifyResult<E>& r) {
  std::cout << "structure: " << (r.structure_ok ? "ok" : "FAIL") << "\n"
            << "identity: " << (r.identity_ok ? "ok" : "FAIL") << "\n"
            << "residual: " << (r.residual_ok ? "ok" : "FAIL")
            << " (norm " << rational_str(r.residual_norm) << ")\n"
            << "verdict: " << (r.valid ? "valid" : "invalid") << "\n";
}

void print_discrepancy(const Polynomial& d) {
  std::cout << "discrepancy:\n";
  write_polynomial(d, std::cout);
}

void print_discrepancy(const StarElement& d) {
  std::cout << "discrepancy:\n";
  write_element(d, std::cout);
}

int cmd_verify_cert(const RunConfig& cfg) {
  const AnyCertificate ac = read_certificate(cfg.cert_path);
  return std::visit(
      [&](const auto& c) {
        const std::size_t arity = [&] {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, Certificate>)
            return c.target.arity();
          else
            return c.target.semigroup().index_arity();
        }();
        const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, arity);
        const auto r = verify_certificate(c, phi);
        print_verify(r);
        if (!r.valid) {
          print_discrepancy(r.discrepancy);
          return 2;
        }
        return 0;
      },
      ac);
}

int cmd_compile_cert(const RunConfig& cfg) {
  const AnyCertificate ac = read_certificate(cfg.cert_path);
  return std::visit(
      [&](const auto& issued) {
        auto c = issued;
        if (!cfg.eps_str.empty()) {
          const Rational eps = parse_rational(cfg.eps_str);
          if (eps < c.slack)
            throw UsageError("cannot tighten issued slack " + rational_str(c.slack) + " to " +
                             rational_str(eps));
          if (eps > c.slack) {
            // f + eps/2 = sum + (eps - slack)/2 + rho keeps the identity and
            // the residual bound slack/4 <= eps/4.
            std::decay_t<decltype(c.pairs[0].first)> lift;
            lift.d = 1;
            lift.entries.emplace_back((eps - c.slack) / 2, constant_like(c.target, Rational(1)));
            c.pairs.emplace_back(std::move(lift), ModuleGenerator::constant_one());
            c.slack = eps;
            std::cout << "slack lifted to " << rational_str(eps) << "\n";
          }
        }
        const std::size_t arity = [&] {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, Certificate>)
            return c.target.arity();
          else
            return c.target.semigroup().index_arity();
        }();
        const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, arity);
        const auto vr = verify_certificate(c, phi);
        if (!vr.valid) {
          print_verify(vr);
          print_discrepancy(vr.discrepancy);
          return 2;
        }
        try {
          const auto res = compile(c, phi, cfg.d, cfg.bits);
          std::cout << "certificate: valid\n"
                    << "series budget delta = " << rational_str(res.delta) << "\n"
                    << "max truncation order = " << res.max_order << "\n"
                    << "certified gap = " << rational_str(res.certified_gap) << "\n";
          with_output(cfg.out_path, [&](std::ostream& os) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, Certificate>)
              write_sum(res.g, c.target.arity(), os);
            else
              write_sum(res.g, c.target.semigroup(), os);
          });
          return 0;
        } catch (const CompilationOverflow& e) {
          std::cout << "inconclusive: " << e.what() << "\n";
          return 2;
        }
      },
      ac);
}

int cmd_find_cert(const RunConfig& cfg) {
  const Polynomial f = read_polynomial(cfg.poly_path);
  const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, f.arity());
  const Rational eps = parse_rational(cfg.eps_str);
  SolverOptions opts;
  opts.max_iterations = cfg.iters;
  opts.tol = cfg.tol;
  opts.time_budget_ms = cfg.time_budget_ms;
  const FindResult fr = find_certificate(f, phi, eps, cfg.degree, opts);
  if (const auto* cert = std::get_if<Certificate>(&fr)) {
    const auto vr = verify_certificate(*cert, phi);
    std::cout << "certificate found\n";
    print_verify(vr);
    with_output(cfg.out_path, [&](std::ostream& os) { write_certificate(*cert, os); });
    return vr.valid ? 0 : 2;
  }
  const auto& rep = std::get<InfeasibleReport>(fr);
  std::cout << "inconclusive: " << rep.message << "\n"
            << "iterations = " << rep.iterations << "\n"
            << "affine residual = " << rep.affine_residual << "\n"
            << "psd violation = " << rep.psd_violation << "\n";
  if (rep.attempted_extraction && !(rep.best_residual_norm < 0))
    std::cout << "best exact residual norm = " << rational_str(rep.best_residual_norm) << "\n";
  return 2;
}

int cmd_distance_lb(const RunConfig& cfg) {
  const Polynomial f = read_polynomial(cfg.poly_path);
  const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, f.arity());
  const auto points = read_points(cfg.points_path);
  for (const auto& x : points)
    if (x.size() != f.arity())
      throw UsageError("point arity does not match the polynomial");
  const Rational lb = distance_lower_bound(f, points, phi, cfg.depth);
  std::cout << "distance lower bound = " << rational_str(lb) << "\n";
  return 0;
}

int cmd_phi_prime(const RunConfig& cfg) {
  auto [arity, table] = read_raw_table(cfg.phi_spec);
  std::vector<unsigned> inv(arity);
  for (std::size_t i = 0; i < arity; ++i) inv[i] = static_cast<unsigned>(i);
  if (!cfg.involution_str.empty()) {
    const MultiIndex perm = parse_multiindex(cfg.involution_str, arity);
    inv.assign(perm.e.begin(), perm.e.end());
  }
  const WeakAbsoluteValue w(arity, inv, std::move(table));
  const MultiIndex s = parse_multiindex(cfg.s_str, arity);
  std::cout << "phi(s) = " << rational_str(w.raw(s)) << "\n"
            << "m(s) = " << rational_str(w.value(s)) << "\n"
            << "phi'(s) = " << rational_str(w.phi_prime(s)) << "\n";
  if (w.degenerate()) std::cout << "note: weight is degenerate (phi' = 0 somewhere)\n";
  return 0;
}

int cmd_check_moments(const RunConfig& cfg) {
  const MomentFunctional L = read_moments(cfg.moments_path, cfg.degree);
  const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, L.semigroup().index_arity());
  const Rational C = parse_rational(cfg.bound_str);
  MomentCheckOptions opts;
  opts.seed = cfg.seed;
  opts.random_probes = cfg.probes;
  const MomentConditionReport rep = moment_condition_check(L, phi, C, cfg.d, {}, opts);
  std::cout << "seed = " << cfg.seed << "\n"
            << "bound |L| <= C*phi: " << (rep.bound_ok ? "ok" : "FAIL") << "\n"
            << "power positivity: " << (rep.power_ok ? "ok" : "FAIL") << "\n"
            << "cauchy-schwarz: " << (rep.cs_ok ? "ok" : "FAIL") << "\n";
  if (!rep.detail.empty()) std::cout << "detail: " << rep.detail << "\n";

  bool psd = true;
  const unsigned hdeg = L.degree() / 2;
  const HankelResult hr = hankel_psd_check(L, hdeg);
  if (const auto* ok = std::get_if<HankelPsd>(&hr)) {
    std::cout << "hankel(degree " << hdeg << "): psd, min eigenvalue " << ok->min_eigenvalue
              << "\n";
  } else {
    const auto& wit = std::get<HankelWitness>(hr);
    psd = false;
    std::cout << "hankel(degree " << hdeg << "): NOT psd, witness value "
              << rational_str(wit.value) << "\n";
    for (std::size_t i = 0; i < wit.basis.size(); ++i)
      if (!wit.coeffs[i].is_zero())
        std::cout << "  p[" << multiindex_str(wit.basis[i]) << "] = "
                  << rational_str(wit.coeffs[i].re) << "," << rational_str(wit.coeffs[i].im)
                  << "\n";
  }
  const bool all = rep.bound_ok && rep.power_ok && rep.cs_ok && psd;
  std::cout << "verdict: " << (all ? "consistent" : "inconsistent") << "\n";
  return all ? 0 : 2;
}

int cmd_verify_identities(const RunConfig& cfg) {
  if (cfg.n == 0) throw UsageError("--n must be positive");
  bool all = true;
  const SymbolicIdentityReport hw = hw_identity_check(cfg.n);
  std::cout << "n!X identity (n=" << cfg.n << "): " << (hw.equal ? "ok" : "FAIL") << "\n";
  all = all && hw.equal;

  const bool have_files = !cfg.a_path.empty() || !cfg.t_path.empty();
  if (have_files && (cfg.a_path.empty() || cfg.t_path.empty()))
    throw UsageError("--a and --t must be given together");
  if (have_files && cfg.n % 2 != 0)
    throw UsageError("the expansion identities need even n");

  if (cfg.n % 2 == 0) {
    std::vector<SymbolicIdentityReport> reps;
    if (have_files) {
      const Polynomial a = read_polynomial(cfg.a_path);
      const Polynomial t = read_polynomial(cfg.t_path);
      reps = basic_trick_check(cfg.n, a, t, parse_rational(cfg.r_str),
                               parse_rational(cfg.k_str));
    } else {
      Polynomial a(4);
      Polynomial t(4);
      Polynomial r(4);
      Polynomial k(4);
      a.add_term(MultiIndex{1, 0, 0, 0}, Rational(1));
      t.add_term(MultiIndex{0, 1, 0, 0}, Rational(1));
      r.add_term(MultiIndex{0, 0, 1, 0}, Rational(1));
      k.add_term(MultiIndex{0, 0, 0, 1}, Rational(1));
      reps = basic_trick_check(cfg.n, a, t, r, k);
    }
    const char* names[] = {"expansion identity", "pairwise grouping"};
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::cout << names[i] << ": " << (reps[i].equal ? "ok" : "FAIL") << "\n";
      if (!reps[i].equal) {
        std::cout << "discrepancy:\n";
        write_polynomial(reps[i].discrepancy, std::cout);
      }
      all = all && reps[i].equal;
    }
  }
  return all ? 0 : 2;
}

int cmd_power_split(const RunConfig& cfg) {
  const Polynomial f = read_polynomial(cfg.poly_path);
  const auto [plus, minus] = power_split(f, cfg.d);
  if (cfg.out_path.empty()) {
    std::cout << "# positive part\n";
    write_sum(plus, f.arity(), std::cout);
    std::cout << "# negative part\n";
    write_sum(minus, f.arity(), std::cout);
  } else {
    with_output(cfg.out_path + ".plus",
                [&](std::ostream& os) { write_sum(plus, f.arity(), os); });
    with_output(cfg.out_path + ".minus",
                [&](std::ostream& os) { write_sum(minus, f.arity(), os); });
  }
  std::cout << "reconstruction exact: yes\n";
  return 0;
}

int cmd_kphi_test(const RunConfig& cfg) {
  const std::vector<Rational> x = parse_rat_list(cfg.x_str);
  const AbsoluteValue phi = parse_phi_spec(cfg.phi_spec, x.size());
  const KphiResult k = kphi_membership(x, phi, cfg.depth);
  if (k.inside) {
    std::cout << "inside (all indices up to degree " << cfg.depth << ")\n";
    return 0;
  }
  std::cout << "outside: |x^s| > phi(s) at s = " << multiindex_str(k.witness) << "\n";
  return 2;
}

}  // namespace

int run_cli(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"exact certificates for weighted cone closures"};
  app.require_subcommand(1);

  auto* sem = app.add_subcommand("seminorm", "weighted coefficient norm of a polynomial");
  sem->add_option("--phi", cfg.phi_spec, "weight: one | geo:r1[,r2,...] | table file")
      ->required();
  sem->add_option("--poly", cfg.poly_path, "polynomial file")->required();

  auto* er = app.add_subcommand("expand-root", "truncated 2d-th root series of r +- X^s");
  er->add_option("--r", cfg.r_str, "base constant")->required();
  er->add_option("--sign", cfg.sign_str, "+ or -")->required();
  er->add_option("--s", cfg.s_str, "monomial exponent e1,...,en")->required();
  er->add_option("--d", cfg.d, "half the power: expands (r +- X^s)^(1/2d)")->required();
  er->add_option("--tol", cfg.tol_str, "tail bound target")->required();
  er->add_option("--phi", cfg.phi_spec, "weight for the tail bound");
  er->add_option("--bits", cfg.bits, "dyadic grid precision");
  er->add_option("--out", cfg.out_path, "write the truncation here");

  auto* cc = app.add_subcommand("compile-cert", "certificate to sum of 2d-th powers");
  cc->add_option("--cert", cfg.cert_path, "certificate file")->required();
  cc->add_option("--phi", cfg.phi_spec, "weight spec")->required();
  cc->add_option("--d", cfg.d, "power exponent 2d")->required();
  cc->add_option("--eps", cfg.eps_str, "lift the issued slack to this value first");
  cc->add_option("--bits", cfg.bits, "dyadic grid precision");
  cc->add_option("--out", cfg.out_path, "write the sum here");

  auto* vc = app.add_subcommand("verify-cert", "exact certificate check");
  vc->add_option("--cert", cfg.cert_path, "certificate file")->required();
  vc->add_option("--phi", cfg.phi_spec, "weight spec")->required();

  auto* fc = app.add_subcommand("find-cert", "search for a certificate numerically");
  fc->add_option("--poly", cfg.poly_path, "target polynomial file")->required();
  fc->add_option("--eps", cfg.eps_str, "slack")->required();
  fc->add_option("--deg", cfg.degree, "generator degree bound")->required();
  fc->add_option("--iters", cfg.iters, "projection iteration cap");
  fc->add_option("--tol", cfg.tol, "numeric convergence target");
  fc->add_option("--time-budget", cfg.time_budget_ms, "milliseconds, 0 = unlimited");
  fc->add_option("--phi", cfg.phi_spec, "weight spec");
  fc->add_option("--out", cfg.out_path, "write the certificate here");

  auto* dl = app.add_subcommand("distance-lb", "sampled lower bound on the cone distance");
  dl->add_option("--poly", cfg.poly_path, "polynomial file")->required();
  dl->add_option("--points", cfg.points_path, "evaluation points file")->required();
  dl->add_option("--phi", cfg.phi_spec, "weight spec");
  dl->add_option("--depth", cfg.depth, "membership check degree");

  auto* pp = app.add_subcommand("phi-prime", "largest absolute-value minorant of a weak weight");
  pp->add_option("--phi", cfg.phi_spec, "weight table file")->required();
  pp->add_option("--s", cfg.s_str, "index e1,...,en")->required();
  pp->add_option("--involution", cfg.involution_str, "coordinate permutation p1,...,pn");

  auto* cm = app.add_subcommand("check-moments", "necessary positivity conditions on moments");
  cm->add_option("--moments", cfg.moments_path, "moment table file")->required();
  cm->add_option("--phi", cfg.phi_spec, "weight spec")->required();
  cm->add_option("--C", cfg.bound_str, "mass bound")->required();
  cm->add_option("--d", cfg.d, "power exponent 2d")->required();
  cm->add_option("--deg", cfg.degree, "moment degree bound (0 = from file)");
  cm->add_option("--probes", cfg.probes, "random probe count");
  cm->add_option("--seed", cfg.seed, "probe seed");

  auto* vi = app.add_subcommand("verify-identities", "exact expansion identities");
  vi->add_option("--n", cfg.n, "identity order")->required();
  vi->add_option("--a", cfg.a_path, "polynomial file for the a symbol");
  vi->add_option("--t", cfg.t_path, "polynomial file for the t symbol");
  vi->add_option("--r", cfg.r_str, "rational for the r symbol");
  vi->add_option("--k", cfg.k_str, "rational for the k symbol");

  auto* ps = app.add_subcommand("power-split", "difference-of-powers decomposition");
  ps->add_option("--poly", cfg.poly_path, "polynomial file")->required();
  ps->add_option("--d", cfg.d, "power exponent 2d")->required();
  ps->add_option("--out", cfg.out_path, "basename for .plus/.minus files");

  auto* kt = app.add_subcommand("kphi-test", "point membership in the weighted cube");
  kt->add_option("--phi", cfg.phi_spec, "weight spec")->required();
  kt->add_option("--x", cfg.x_str, "point q1,...,qn")->required();
  kt->add_option("--depth", cfg.depth, "check degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (sem->parsed()) return cmd_seminorm(cfg);
    if (er->parsed()) return cmd_expand_root(cfg);
    if (cc->parsed()) return cmd_compile_cert(cfg);
    if (vc->parsed()) return cmd_verify_cert(cfg);
    if (fc->parsed()) return cmd_find_cert(cfg);
    if (dl->parsed()) return cmd_distance_lb(cfg);
    if (pp->parsed()) return cmd_phi_prime(cfg);
    if (cm->parsed()) return cmd_check_moments(cfg);
    if (vi->parsed()) return cmd_verify_identities(cfg);
    if (ps->parsed()) return cmd_power_split(cfg);
    if (kt->parsed()) return cmd_kphi_test(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cone
