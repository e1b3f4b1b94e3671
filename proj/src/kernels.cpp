#include "cone_closure/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cone::kernels {

namespace {
std::atomic<int> g_threads{0};

// Below these sizes the parallel variants are pure overhead.
constexpr std::size_t kConvParallelCutoff = 1u << 14;
constexpr std::size_t kSumParallelCutoff = 1u << 12;
// Above this many coefficient products the packed multiply wins.
constexpr std::size_t kConvKroneckerCutoff = 1u << 15;
}  // namespace

int max_threads() {
  int forced = g_threads.load();
  if (forced > 0) return forced;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) { g_threads.store(n > 0 ? n : 0); }

static void conv_row(const std::vector<Int>& a, const std::vector<Int>& b,
                     std::vector<Int>& out, std::size_t k) {
  const std::size_t na = a.size(), nb = b.size();
  Int acc = 0;
  const std::size_t lo = k >= nb - 1 ? k - (nb - 1) : 0;
  const std::size_t hi = k < na - 1 ? k : na - 1;
  for (std::size_t i = lo; i <= hi; ++i) {
    mpz_addmul(acc.backend().data(), a[i].backend().data(), b[k - i].backend().data());
  }
  out[k] = std::move(acc);
}

std::vector<Int> conv_serial(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Int> out(a.size() + b.size() - 1);
  for (std::size_t k = 0; k < out.size(); ++k) conv_row(a, b, out, k);
  return out;
}

std::vector<Int> conv_parallel(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Int> out(a.size() + b.size() - 1);
#ifdef _OPENMP
  const int nt = max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
  for (long long k = 0; k < static_cast<long long>(out.size()); ++k)
    conv_row(a, b, out, static_cast<std::size_t>(k));
#else
  for (std::size_t k = 0; k < out.size(); ++k) conv_row(a, b, out, k);
#endif
  return out;
}

namespace {

std::size_t max_bit_width(const std::vector<Int>& v) {
  std::size_t m = 0;
  for (const Int& x : v)
    if (x != 0) m = std::max(m, mpz_sizeinbase(x.backend().data(), 2));
  return m;
}

// One integer per sign, magnitudes written into disjoint 64-bit word slots,
// combined by a single subtraction.
Int pack_signed(const std::vector<Int>& v, std::size_t stride) {
  std::vector<std::uint64_t> pos(v.size() * stride, 0);
  std::vector<std::uint64_t> neg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] > 0) {
      mpz_export(pos.data() + i * stride, nullptr, -1, 8, 0, 0, v[i].backend().data());
    } else {
      if (neg.empty()) neg.assign(v.size() * stride, 0);
      mpz_export(neg.data() + i * stride, nullptr, -1, 8, 0, 0, v[i].backend().data());
    }
  }
  Int p;
  mpz_import(p.backend().data(), pos.size(), -1, 8, 0, 0, pos.data());
  if (neg.empty()) return p;
  Int n;
  mpz_import(n.backend().data(), neg.size(), -1, 8, 0, 0, neg.data());
  return p - n;
}

}  // namespace

std::vector<Int> conv_kronecker(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t outlen = a.size() + b.size() - 1;
  const std::size_t ba = max_bit_width(a);
  const std::size_t bb = max_bit_width(b);
  if (ba == 0 || bb == 0) return std::vector<Int>(outlen, Int(0));
  std::size_t terms_log = 0;
  while ((std::size_t{1} << terms_log) < std::min(a.size(), b.size())) ++terms_log;
  // Slot width covers |sum of products| plus a sign bit and borrow headroom,
  // rounded to whole words so slots never straddle a word boundary.
  const std::size_t slot = ((ba + bb + terms_log + 3 + 63) / 64) * 64;
  const std::size_t stride = slot / 64;

  const Int pa = pack_signed(a, stride);
  const Int prod = (&a == &b) ? Int(pa * pa) : Int(pa * pack_signed(b, stride));
  const bool flip = prod < 0;
  const Int mag = abs(prod);

  std::vector<std::uint64_t> buf(outlen * stride, 0);
  mpz_export(buf.data(), nullptr, -1, 8, 0, 0, mag.backend().data());

  std::vector<Int> out(outlen);
  const Int full = Int(1) << slot;
  const Int half = Int(1) << (slot - 1);
  Int carry(0);
  for (std::size_t k = 0; k < outlen; ++k) {
    Int d;
    mpz_import(d.backend().data(), stride, -1, 8, 0, 0, buf.data() + k * stride);
    d += carry;
    if (d >= half) {
      d -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    if (flip) d = -d;
    out[k] = std::move(d);
  }
  if (carry != 0) throw DomainError("kronecker convolution digit overflow");
  return out;
}

std::vector<Int> conv(const std::vector<Int>& a, const std::vector<Int>& b) {
  const std::size_t work = a.size() * b.size();
  if (std::min(a.size(), b.size()) >= 32 && work >= kConvKroneckerCutoff)
    return conv_kronecker(a, b);
  if (max_threads() > 1 && work >= kConvParallelCutoff) return conv_parallel(a, b);
  return conv_serial(a, b);
}

Rational sum_serial(const std::vector<Rational>& v) {
  Rational acc = 0;
  for (const auto& x : v) acc += x;
  return acc;
}

Rational sum_parallel(const std::vector<Rational>& v) {
#ifdef _OPENMP
  const int nt = max_threads();
  std::vector<Rational> partial(nt, Rational(0));
#pragma omp parallel num_threads(nt)
  {
    const int tid = omp_get_thread_num();
    Rational local = 0;
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(v.size()); ++i) local += v[i];
    partial[tid] = std::move(local);
  }
  Rational acc = 0;
  for (auto& p : partial) acc += p;
  return acc;
#else
  return sum_serial(v);
#endif
}

Rational sum(const std::vector<Rational>& v) {
  if (max_threads() > 1 && v.size() >= kSumParallelCutoff) return sum_parallel(v);
  return sum_serial(v);
}

}  // namespace cone::kernels
