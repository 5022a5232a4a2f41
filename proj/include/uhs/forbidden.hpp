#pragma once

// Forbidden-word UHS F_{sigma,w}: w-mers that start with 0^d or avoid 0^d
// entirely, with d = floor(log_sigma(w / ln w)) - 1. The size of the second
// clause is analysed through the automaton recognising 0^d.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "uhs/common.hpp"
#include "uhs/kmer_set.hpp"

namespace uhs {

inline unsigned forbidden_d(unsigned sigma, unsigned w) {
    require(sigma >= 2, "alphabet size must be at least 2");
    require(w >= 2, "forbidden-word set needs w >= 2");
    const long double ratio = static_cast<long double>(w) / std::log(static_cast<long double>(w));
    const long d = static_cast<long>(std::floor(std::log(ratio) / std::log(static_cast<long double>(sigma)))) - 1;
    require(d >= 1, "w=" + std::to_string(w) + " too small: forbidden word length d must be at least 1");
    return static_cast<unsigned>(d);
}

/// True iff the w-mer `code` contains d consecutive zeros.
inline bool contains_zero_run(std::uint64_t code, unsigned sigma, unsigned w, unsigned d) {
    unsigned run = 0;
    for (unsigned i = 0; i < w; ++i, code /= sigma) {
        run = (code % sigma == 0) ? run + 1 : 0;
        if (run >= d) return true;
    }
    return false;
}

inline KmerSet build_forbidden_set(unsigned sigma, unsigned w, unsigned d, const Budget& budget = {}) {
    require(d >= 1 && d <= w, "forbidden word length must be in [1, w]");
    const std::uint64_t prefix_limit = static_cast<std::uint64_t>(checked_pow(sigma, w - d));
    return KmerSet::from_predicate(
        sigma, w,
        [&](std::uint64_t x) { return x < prefix_limit || !contains_zero_run(x, sigma, w, d); }, budget);
}

inline KmerSet build_forbidden_set(unsigned sigma, unsigned w, const Budget& budget = {}) {
    return build_forbidden_set(sigma, w, forbidden_d(sigma, w), budget);
}

/// Witness string 1^{w-d} 0^d 1^{w-d-1}; its w-windows form a path of w-d
/// vertices avoiding F.
inline Word forbidden_witness(unsigned w, unsigned d) {
    require(d >= 1 && d < w, "need 1 <= d < w");
    Word s(w - d, 1);
    s.insert(s.end(), d, 0);
    s.insert(s.end(), w - d - 1, 1);
    return s;
}

// ---------------------------------------------------------------------------
// Dense matrices over exact rationals.

template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols == b.rows, "matrix shape mismatch");
        Matrix out(a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t k = 0; k < a.cols; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class T>
Matrix<T> matrix_power(Matrix<T> base, std::uint64_t exponent) {
    require(base.rows == base.cols, "power of a non-square matrix");
    Matrix<T> result = Matrix<T>::identity(base.rows);
    while (exponent) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

using FsmMatrix = Matrix<Rational>;

/// Transition matrix of the 0^d automaton restricted to its d live states:
/// first row 1-mu, subdiagonal mu, with mu = 1/sigma.
inline FsmMatrix fsm_matrix(unsigned sigma, unsigned d) {
    require(sigma >= 2 && d >= 1, "need sigma >= 2 and d >= 1");
    const Rational mu(1, sigma);
    FsmMatrix a(d, d);
    for (unsigned j = 0; j < d; ++j) a(0, j) = 1 - mu;
    for (unsigned i = 1; i < d; ++i) a(i, i - 1) = mu;
    return a;
}

/// Probability that a uniform random w-mer avoids 0^d: || A^w p_0 ||_1.
inline Rational survival_probability(unsigned sigma, unsigned d, std::uint64_t w) {
    const auto power = matrix_power(fsm_matrix(sigma, d), w);
    Rational total = 0;
    for (unsigned i = 0; i < d; ++i) total += power(i, 0);
    return total;
}

/// Number of w-mers without 0^d, from the survival probability.
inline BigInt avoider_count(unsigned sigma, unsigned d, unsigned w) {
    const Rational scaled = survival_probability(sigma, d, w) * Rational(big_pow(sigma, w));
    require(denominator(scaled) == 1, "avoider count is not an integer");
    return numerator(scaled);
}

/// Exact |F| = sigma^{w-d} + avoiders; the two clauses are disjoint.
inline BigInt forbidden_set_size(unsigned sigma, unsigned w, unsigned d) {
    return big_pow(sigma, w - d) + avoider_count(sigma, d, w);
}

// ---------------------------------------------------------------------------
// Spectrum of A_d.

/// det(A_d - lambda I) in closed form; the lambda = mu branch is used within tol.
inline long double char_poly_eval(unsigned sigma, unsigned d, long double lambda, long double tol = 1e-12L) {
    require(sigma >= 2 && d >= 1, "need sigma >= 2 and d >= 1");
    const long double mu = 1.0L / sigma;
    const long double sign = (d % 2 == 0) ? 1.0L : -1.0L;
    if (std::fabs(lambda - mu) < tol) return std::pow(-mu, static_cast<long double>(d - 1)) * ((1 - mu) * d - mu);
    const long double num = std::pow(lambda, static_cast<long double>(d + 1)) - std::pow(lambda, static_cast<long double>(d)) -
                            std::pow(mu, static_cast<long double>(d + 1)) + std::pow(mu, static_cast<long double>(d));
    return sign * num / (lambda - mu);
}

class bracket_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// f_d(1 - eps) = mu^d (1 - mu) - eps (1 - eps)^d, evaluated without cancellation near 1.
inline long double f_near_one(long double mu, unsigned d, long double eps) {
    return std::pow(mu, static_cast<long double>(d)) * (1 - mu) - eps * std::exp(d * std::log1p(-eps));
}

}  // namespace detail

struct DominantRoot {
    long double lambda = 0;
    long double lower = 0;  // 1 - mu^d
    long double upper = 0;  // 1 - mu^(d+1)
    unsigned iterations = 0;
};

/// Whether f_d strictly changes sign on (1 - mu^d, 1 - mu^(d+1)).
inline bool root_bracket_holds(unsigned sigma, unsigned d) {
    const long double mu = 1.0L / sigma;
    const long double eps_lo = std::pow(mu, static_cast<long double>(d + 1));  // lambda upper end
    const long double eps_hi = std::pow(mu, static_cast<long double>(d));      // lambda lower end
    return detail::f_near_one(mu, d, eps_hi) < 0 && detail::f_near_one(mu, d, eps_lo) > 0;
}

/// Bisection for the real root of f_d(l) = l^{d+1} - l^d - mu^{d+1} + mu^d
/// inside (1 - mu^d, 1 - mu^{d+1}).
inline DominantRoot dominant_root(unsigned sigma, unsigned d, long double tol = 1e-14L) {
    require(sigma >= 2 && d >= 1, "need sigma >= 2 and d >= 1");
    require(tol > 0, "tolerance must be positive");
    const long double mu = 1.0L / sigma;
    long double lo = std::pow(mu, static_cast<long double>(d + 1));  // f > 0 here
    long double hi = std::pow(mu, static_cast<long double>(d));      // f < 0 here
    if (!root_bracket_holds(sigma, d))
        throw bracket_error("f_d has no sign change on (1-mu^d, 1-mu^(d+1)) for sigma=" + std::to_string(sigma) +
                            ", d=" + std::to_string(d) + "; d is not large enough");
    DominantRoot r;
    r.lower = 1 - hi;
    r.upper = 1 - lo;
    while (hi - lo > tol && r.iterations < 10000) {
        const long double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (detail::f_near_one(mu, d, mid) > 0)
            lo = mid;
        else
            hi = mid;
        ++r.iterations;
    }
    r.lambda = 1 - (lo + (hi - lo) / 2);
    return r;
}

/// || A_d nu - lambda nu ||_inf with nu = (1, s, ..., s^{d-1}), s = mu / lambda.
inline long double eigen_residual(unsigned sigma, unsigned d, long double lambda) {
    const long double mu = 1.0L / sigma;
    const long double s = mu / lambda;
    std::vector<long double> nu(d);
    long double sum = 0;
    for (unsigned i = 0; i < d; ++i) {
        nu[i] = std::pow(s, static_cast<long double>(i));
        sum += nu[i];
    }
    long double worst = std::fabs((1 - mu) * sum - lambda * nu[0]);
    for (unsigned i = 1; i < d; ++i) worst = std::max(worst, std::fabs(mu * nu[i - 1] - lambda * nu[i]));
    return worst;
}

}  // namespace uhs
