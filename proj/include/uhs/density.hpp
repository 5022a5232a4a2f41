#pragma once

// Particular and expected densities of selection schemes.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "uhs/debruijn.hpp"
#include "uhs/kmer_set.hpp"
#include "uhs/scheme.hpp"

namespace uhs {

struct DensityResult {
    enum class Mode { Particular, ExpectedExact, ExpectedEstimate };
    Mode mode = Mode::Particular;
    std::uint64_t selected = 0;
    std::uint64_t windows = 0;
    /// Denominator of the density; equals `windows` except for linear
    /// minimizer runs, which count k-mers.
    std::uint64_t denominator = 0;
    Rational density;
    double std_error = 0.0;     // ExpectedEstimate only
    unsigned order = 0;         // de Bruijn order used by ExpectedExact
    std::vector<std::uint64_t> positions;  // Particular only: sorted distinct selections

    double value() const { return density.convert_to<double>(); }
};

/// Distinct selected positions over a linear string. Table schemes divide by
/// the number of windows; minimizers by the number of k-mers in s.
inline DensityResult particular_density(const SelectionScheme& f, std::span<const Symbol> s) {
    require(s.size() >= f.window_symbols(), "string shorter than one window");
    const auto picks = f.select_all(s);
    std::vector<bool> taken(s.size(), false);
    DensityResult r;
    r.windows = picks.size();
    for (std::size_t i = 0; i < picks.size(); ++i) {
        const std::size_t p = i + picks[i];
        if (!taken[p]) {
            taken[p] = true;
            ++r.selected;
        }
    }
    for (std::size_t p = 0; p < taken.size(); ++p)
        if (taken[p]) r.positions.push_back(p);
    r.denominator = f.kind() == SelectionScheme::Kind::Table ? r.windows : s.size() - f.k() + 1;
    r.density = Rational(BigInt(r.selected), BigInt(r.denominator));
    return r;
}

/// Selections on a cyclic string: window i covers positions i.. mod |s|.
inline DensityResult cyclic_density(const SelectionScheme& f, std::span<const Symbol> cycle) {
    const std::size_t n = cycle.size();
    require(n >= f.window_symbols(), "cycle shorter than one window");
    Word extended(cycle.begin(), cycle.end());
    for (std::size_t i = 0; i + 1 < f.window_symbols(); ++i) extended.push_back(cycle[i]);
    const auto picks = f.select_all(extended);
    std::vector<bool> taken(n, false);
    DensityResult r;
    r.mode = DensityResult::Mode::ExpectedExact;
    r.windows = n;
    r.denominator = n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = (i + picks[i]) % n;
        if (!taken[p]) {
            taken[p] = true;
            ++r.selected;
        }
    }
    r.density = Rational(BigInt(r.selected), BigInt(n));
    return r;
}

/// Exact density on the cyclic de Bruijn sequence of the given order.
inline DensityResult debruijn_density(const SelectionScheme& f, unsigned order, const Budget& budget = {}) {
    require(order >= f.window_symbols(), "de Bruijn order must cover a window");
    auto r = cyclic_density(f, debruijn_cycle(f.sigma(), order, budget));
    r.order = order;
    return r;
}

/// Order of de Bruijn sequence whose windows carry every context the scheme
/// can distinguish: window+1 for forward schemes, window+positions-1 otherwise.
inline unsigned required_order(const SelectionScheme& f) {
    return f.known_forward() ? f.window_symbols() + 1 : f.window_symbols() + f.positions() - 1;
}

struct DensityOptions {
    Budget budget{};
    std::uint64_t sample_symbols = 10'000'000;
    std::uint64_t seed = 42;
};

/// Density of f on `symbols` uniform random symbols (seeded, reproducible).
inline DensityResult estimate_density(const SelectionScheme& f, std::uint64_t symbols, std::uint64_t seed) {
    require(symbols >= f.window_symbols(), "sample shorter than one window");
    std::mt19937_64 rng(seed);
    Word s(symbols);
    for (auto& c : s) c = static_cast<Symbol>(rng() % f.sigma());
    const auto picks = f.select_all(s);
    std::vector<bool> taken(s.size(), false);
    DensityResult r;
    r.mode = DensityResult::Mode::ExpectedEstimate;
    r.windows = picks.size();
    r.denominator = r.windows;
    for (std::size_t i = 0; i < picks.size(); ++i) {
        const std::size_t p = i + picks[i];
        if (!taken[p]) {
            taken[p] = true;
            ++r.selected;
        }
    }
    r.density = Rational(BigInt(r.selected), BigInt(r.windows));
    const double p = r.value();
    r.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(r.windows));
    return r;
}

/// Exact expected density when the required de Bruijn order fits the budget,
/// otherwise a seeded random estimate with its standard error.
inline DensityResult expected_density(const SelectionScheme& f, const DensityOptions& opts = {}) {
    const unsigned order = required_order(f);
    bool fits = true;
    try {
        node_count(f.sigma(), order, opts.budget);
    } catch (const budget_error&) {
        fits = false;
    }
    if (fits) return debruijn_density(f, order, opts.budget);
    return estimate_density(f, opts.sample_symbols, opts.seed);
}

}  // namespace uhs
