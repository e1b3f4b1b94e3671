#pragma once

#include <cstdint>
#include <string>

namespace cone {

// Everything the subcommand handlers read. Populated by the argument parser
// in one place so a run is reproducible from the config alone.
struct RunConfig {
  std::string subcommand;

  std::string poly_path;
  std::string cert_path;
  std::string points_path;
  std::string moments_path;
  std::string a_path;
  std::string t_path;
  std::string phi_spec = "one";
  std::string out_path;

  std::string r_str = "0/1";
  std::string k_str = "1/1";
  std::string eps_str;
  std::string bound_str;  // --C for moment checks
  std::string tol_str;
  std::string x_str;
  std::string s_str;
  std::string sign_str = "+";
  std::string involution_str;

  unsigned n = 0;
  unsigned d = 1;
  unsigned degree = 0;
  unsigned depth = 8;
  unsigned probes = 100;
  unsigned iters = 100000;
  unsigned bits = 0;
  double tol = 1e-9;
  std::uint64_t seed = 20260816;
  std::uint64_t time_budget_ms = 0;
};

// exit 0: success / certified; 1: usage error; 2: inconclusive or invalid
int run_cli(int argc, char** argv);

}  // namespace cone
