#include "strengthlab/integers.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace strengthlab {

BigInt isqrt(const BigInt& d) {
    if (d < 0) throw std::invalid_argument("isqrt: negative input");
    return boost::multiprecision::sqrt(d);
}

std::uint64_t isqrt_u64(std::uint64_t d) {
    // std::sqrt gets within 1 ulp; fix up exactly.
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d)));
    while (r > 0 && r > d / r) --r;
    while ((r + 1) <= d / (r + 1)) ++r;
    return r;
}

BigInt choose2(const BigInt& n) {
    if (n < 2) return 0;
    return n * (n - 1) / 2;
}

BigInt gaussian_binomial(std::uint32_t n, std::uint32_t k, std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be >= 2");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    // acc after step i equals [n-k+i choose i]_q, so every division is exact.
    BigInt acc = 1;
    BigInt qb = q;
    for (std::uint32_t i = 1; i <= k; ++i) {
        BigInt num = boost::multiprecision::pow(qb, n - k + i) - 1;
        BigInt den = boost::multiprecision::pow(qb, i) - 1;
        acc *= num;
        acc /= den;
    }
    return acc;
}

namespace {

BigInt factorial(std::uint64_t n) {
    BigInt f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// Brackets e^k between A/N! and (A+R)/N! with A, R integers, then widens N
// until both ends share the same floor.
BigInt exp_ceiling_uncached(std::uint64_t k) {
    if (k == 0) return 2;  // e^0 = 1, smallest integer > 1
    std::uint64_t n = 3 * k + 64;
    for (;;) {
        BigInt nfact = factorial(n);
        BigInt term = nfact;  // k^i * N!/i! at i = 0
        BigInt sum = term;
        for (std::uint64_t i = 1; i <= n; ++i) {
            term *= k;
            term /= i;  // exact: N!/i! * k^i stays integral
            sum += term;
        }
        // Tail of the series: sum_{i>N} k^i/i! <= 2 k^{N+1}/(N+1)! once
        // k/(N+2) <= 1/2, which n >= 2k guarantees. Scaled by N! that is
        // 2 k^{N+1}/(N+1).
        BigInt tail = 2 * boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n + 1)) / (n + 1) + 1;
        BigInt lo = sum / nfact;
        BigInt hi = (sum + tail) / nfact;
        if (lo == hi) return lo + 1;
        n *= 2;
    }
}

}  // namespace

BigInt exp_ceiling(std::uint64_t k) {
    static std::mutex mu;
    static std::map<std::uint64_t, BigInt> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    BigInt v = exp_ceiling_uncached(k);
    cache.emplace(k, v);
    return v;
}

}  // namespace strengthlab
