#pragma once

// Exact zero test for integer combinations of w-th roots of unity.
//
// g(r_w) = 0 for the primitive root r_w iff Phi_w divides g. Multiplying by
// h_w = (X^w - 1) / Phi_w turns that into: g * h_w == 0 in Z[X]/(X^w - 1),
// a cyclic convolution with small integer coefficients.

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "uhs/common.hpp"

namespace uhs {

/// Integer polynomial, coefficient i multiplies X^i.
using IntPoly = std::vector<long long>;

namespace detail {

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Exact quotient of a by a monic b.
inline IntPoly poly_div_monic(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    require(b.back() == 1, "divisor must be monic");
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const long long c = a[i];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (std::size_t i = 0; i < db; ++i) require(a[i] == 0, "polynomial division is not exact");
    return q;
}

struct CyclotomicCache {
    std::mutex mutex;
    std::map<unsigned, IntPoly> phi;
    std::map<unsigned, IntPoly> cofactor;
};

inline CyclotomicCache& cyclotomic_cache() {
    static CyclotomicCache cache;
    return cache;
}

inline IntPoly cyclotomic_locked(CyclotomicCache& cache, unsigned n);

/// prod_{d | n, d < n} Phi_d, computed with the cache lock held.
inline IntPoly cofactor_locked(CyclotomicCache& cache, unsigned n) {
    if (auto it = cache.cofactor.find(n); it != cache.cofactor.end()) return it->second;
    IntPoly h{1};
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) h = poly_mul(h, cyclotomic_locked(cache, d));
    cache.cofactor[n] = h;
    return h;
}

inline IntPoly cyclotomic_locked(CyclotomicCache& cache, unsigned n) {
    if (auto it = cache.phi.find(n); it != cache.phi.end()) return it->second;
    IntPoly xn(n + 1, 0);
    xn[0] = -1;
    xn[n] = 1;
    IntPoly phi = poly_div_monic(xn, cofactor_locked(cache, n));
    cache.phi[n] = phi;
    return phi;
}

}  // namespace detail

/// Largest n supported by the exact test (coefficient growth stays in 64 bits).
inline constexpr unsigned kMaxCyclotomicOrder = 512;

inline IntPoly cyclotomic(unsigned n) {
    require(n >= 1 && n <= kMaxCyclotomicOrder, "cyclotomic order out of supported range");
    auto& cache = detail::cyclotomic_cache();
    std::lock_guard lock(cache.mutex);
    return detail::cyclotomic_locked(cache, n);
}

/// (X^n - 1) / Phi_n.
inline IntPoly cyclotomic_cofactor(unsigned n) {
    require(n >= 1 && n <= kMaxCyclotomicOrder, "cyclotomic order out of supported range");
    auto& cache = detail::cyclotomic_cache();
    std::lock_guard lock(cache.mutex);
    return detail::cofactor_locked(cache, n);
}

/// Zero test for sum_e g[e] r_n^e with g given modulo X^n - 1 (g.size() == n).
class RootOfUnityZeroTest {
public:
    explicit RootOfUnityZeroTest(unsigned n) : n_(n), cofactor_(cyclotomic_cofactor(n)) {}

    unsigned order() const { return n_; }

    bool vanishes(const std::vector<long long>& g) const {
        require(g.size() == n_, "coefficient vector must have length n");
        for (unsigned k = 0; k < n_; ++k) {
            __int128 acc = 0;
            for (std::size_t j = 0; j < cofactor_.size(); ++j) {
                if (cofactor_[j] == 0) continue;
                acc += static_cast<__int128>(cofactor_[j]) * g[(k + n_ - j % n_) % n_];
            }
            if (acc != 0) return false;
        }
        return true;
    }

private:
    unsigned n_;
    IntPoly cofactor_;
};

}  // namespace uhs
