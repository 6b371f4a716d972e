#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace strengthlab {

// Exact arbitrary-precision integer. Everything size-like that can leave the
// 64-bit range (subspace counts, rank thresholds, exp() bounds) goes through
// this type; no floating point is used anywhere in the library's decisions.
using BigInt = boost::multiprecision::cpp_int;

// Floor of the integer square root. d >= 0.
BigInt isqrt(const BigInt& d);
std::uint64_t isqrt_u64(std::uint64_t d);

// Binomial coefficient C(n, 2) = n(n-1)/2.
BigInt choose2(const BigInt& n);

// Gaussian binomial [n choose k]_q: the number of k-dimensional subspaces of
// an n-dimensional space over a field with q elements. Exact.
BigInt gaussian_binomial(std::uint32_t n, std::uint32_t k, std::uint64_t q);

// Smallest integer strictly greater than e^k (k >= 0), i.e. floor(e^k) + 1.
// Computed by bracketing the exponential series with exact integers; the
// bracket is tightened until it pins a unique integer. For an integer r this
// gives the exact tests   r > e^k  <=>  r >= exp_ceiling(k)
// and, for k >= 1,        e^k <= r  <=>  r >= exp_ceiling(k).
BigInt exp_ceiling(std::uint64_t k);

}  // namespace strengthlab
