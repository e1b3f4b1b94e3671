// Timing table for the exact kernels: serial reference vs the OpenMP
// variants, with a correctness cross-check on every row.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "cone_closure/kernels.hpp"
#include "cone_closure/rng.hpp"

using namespace cone;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<Int> random_ints(Rng& rng, std::size_t n, unsigned bits) {
  std::vector<Int> v(n);
  for (auto& x : v) {
    Int acc(0);
    for (unsigned b = 0; b < bits; b += 32)
      acc = (acc << 32) + Int(static_cast<std::uint32_t>(rng.next_u64()));
    x = rng.next_u64() % 2 ? acc : -acc;
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  Rng rng(12345);

  std::printf("threads available: %d\n", kernels::max_threads());
  std::printf("%-28s %10s %10s %10s %8s\n", "kernel", "serial ms", "openmp ms", "kron ms",
              "match");

  for (const std::size_t n : {512u, 2048u, 8192u}) {
    const std::vector<Int> a = random_ints(rng, n, 128);
    const std::vector<Int> b = random_ints(rng, n, 128);
    double ts = 0;
    double tp = 0;
    double tk = 0;
    std::vector<Int> rs;
    std::vector<Int> rp;
    std::vector<Int> rk;
    for (int i = 0; i < reps; ++i) {
      auto t0 = std::chrono::steady_clock::now();
      rs = kernels::conv_serial(a, b);
      ts += ms_since(t0);
      t0 = std::chrono::steady_clock::now();
      rp = kernels::conv_parallel(a, b);
      tp += ms_since(t0);
      t0 = std::chrono::steady_clock::now();
      rk = kernels::conv_kronecker(a, b);
      tk += ms_since(t0);
    }
    const bool ok = rs == rp && rs == rk;
    std::printf("conv n=%-21zu %10.2f %10.2f %10.2f %8s\n", n, ts / reps, tp / reps, tk / reps,
                ok ? "yes" : "NO");
    if (!ok) return 1;
  }

  for (const std::size_t n : {100000u, 400000u}) {
    std::vector<Rational> v(n);
    for (auto& q : v) q = rng.rational(1000, 97);
    double ts = 0;
    double tp = 0;
    Rational ss;
    Rational sp;
    for (int i = 0; i < reps; ++i) {
      auto t0 = std::chrono::steady_clock::now();
      ss = kernels::sum_serial(v);
      ts += ms_since(t0);
      t0 = std::chrono::steady_clock::now();
      sp = kernels::sum_parallel(v);
      tp += ms_since(t0);
    }
    std::printf("sum n=%-22zu %10.2f %10.2f %10s %8s\n", n, ts / reps, tp / reps, "-",
                ss == sp ? "yes" : "NO");
    if (ss != sp) return 1;
  }
  return 0;
}
