#pragma once

// Context sets C_f: the contexts in which a scheme selects a position that no
// earlier overlapping window selected. C_f is a UHS whose relative size equals
// the scheme's density.

#include <cstdint>
#include <string>
#include <vector>

#include "uhs/kmer_set.hpp"
#include "uhs/scheme.hpp"

namespace uhs {

struct ContextSet {
    KmerSet set;
    std::string source;  // "local" or "forward"
};

/// Local contexts: c has `positions` consecutive windows; c is a member iff the
/// last window's selection differs from every earlier window's selection.
/// For a selection scheme on w-mers these are the (2w-1)-mers.
inline ContextSet build_context_set_local(const SelectionScheme& f, const Budget& budget = {}) {
    const unsigned sigma = f.sigma();
    const unsigned ws = f.window_symbols();
    const unsigned p = f.positions();
    const unsigned len = ws + p - 1;
    node_count(sigma, len, budget, "local context set");
    const auto values = evaluate_all(f, budget);
    const std::uint64_t wmod = values.size();

    // shifts[i] = sigma^(len - i - ws): divides out the symbols after window i.
    std::vector<std::uint64_t> shifts(p);
    for (unsigned i = 0; i < p; ++i) shifts[i] = static_cast<std::uint64_t>(checked_pow(sigma, len - i - ws));

    auto member = [&](std::uint64_t c) {
        const std::uint64_t last = values[c % wmod] + (p - 1);
        for (unsigned i = 0; i + 1 < p; ++i)
            if (values[(c / shifts[i]) % wmod] + i == last) return false;
        return true;
    };
    return {KmerSet::from_predicate(sigma, len, member, budget), "local"};
}

/// Forward contexts: two consecutive windows, a (window+1)-mer. Valid only for
/// forward schemes, where a repeated pick can only repeat the previous window's.
inline ContextSet build_context_set_forward(const SelectionScheme& f, const Budget& budget = {}) {
    require(f.known_forward() || is_forward(f, budget), "forward context set needs a forward scheme");
    const unsigned sigma = f.sigma();
    const unsigned len = f.window_symbols() + 1;
    node_count(sigma, len, budget, "forward context set");
    const auto values = evaluate_all(f, budget);
    const std::uint64_t wmod = values.size();
    auto member = [&](std::uint64_t c) { return values[c % wmod] + 1 != values[c / sigma]; };
    return {KmerSet::from_predicate(sigma, len, member, budget), "forward"};
}

}  // namespace uhs
