#pragma once

#include <vector>

#include "cone_closure/rational.hpp"

// Dense compute kernels. Every kernel ships a serial reference and an
// OpenMP variant; both produce bit-identical results because all reductions
// are over exact integers or rationals. The unqualified entry points
// dispatch on problem size and the configured thread count.
namespace cone::kernels {

int max_threads();
void set_threads(int n);  // n <= 0 restores the OpenMP default

// Full convolution: out[k] = sum_i a[i] * b[k-i]; sizes add minus one.
std::vector<Int> conv_serial(const std::vector<Int>& a, const std::vector<Int>& b);
std::vector<Int> conv_parallel(const std::vector<Int>& a, const std::vector<Int>& b);
// Kronecker substitution: pack each vector into one integer with fixed-width
// slots, multiply once, read the signed slot digits back with borrow
// propagation. Exact, and rides the subquadratic bignum multiply, so it wins
// by orders of magnitude on the long truncated series that power compilation
// produces.
std::vector<Int> conv_kronecker(const std::vector<Int>& a, const std::vector<Int>& b);
std::vector<Int> conv(const std::vector<Int>& a, const std::vector<Int>& b);

// Exact sum of a rational vector (chunked parallel reduction).
Rational sum_serial(const std::vector<Rational>& v);
Rational sum_parallel(const std::vector<Rational>& v);
Rational sum(const std::vector<Rational>& v);

}  // namespace cone::kernels
