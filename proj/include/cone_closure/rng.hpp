#pragma once

#include <cstdint>

#include "cone_closure/rational.hpp"

namespace cone {

// splitmix64. Hand-rolled so that seeded runs produce identical streams on
// every platform and standard library (std::uniform_int_distribution is not
// portable across implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0, via rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ULL) / n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // Uniform integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return next_u64() & 1u; }

  // Rational with numerator in [-mag, mag] and denominator in [1, max_den].
  Rational rational(long long mag, long long max_den) {
    Int n(range(-mag, mag));
    Int d(range(1, max_den));
    return ratio(n, d);
  }

  // Uniform on the dyadic grid k/2^bits restricted to [lo, hi].
  Rational rational_in(const Rational& lo, const Rational& hi, unsigned bits = 16) {
    Int a = ceil_div(num(lo) * pow2(bits), den(lo));
    Int b = floor_div(num(hi) * pow2(bits), den(hi));
    if (b < a) return lo;
    Int span = b - a + 1;
    if (span > Int(1) << 62) span = Int(1) << 62;
    Int pick = a + Int(below(span.convert_to<std::uint64_t>()));
    return dyadic(pick, bits);
  }

 private:
  std::uint64_t state_;
};

}  // namespace cone
