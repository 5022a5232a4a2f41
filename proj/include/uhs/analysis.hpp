#pragma once

// Hitting tests and longest remaining path on the de Bruijn graph with a
// k-mer set removed. The graph is implicit: successors of x are
// (x * sigma + a) mod sigma^w, predecessors a * sigma^(w-1) + x / sigma.

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "uhs/common.hpp"
#include "uhs/debruijn.hpp"
#include "uhs/kmer_set.hpp"

namespace uhs {

/// True iff some w-window of s is in the set.
inline bool hits(const KmerSet& set, std::span<const Symbol> s) {
    const unsigned w = set.w();
    require(s.size() >= w, "string shorter than the k-mer length");
    if (set.cardinality() == 0) return false;
    const std::uint64_t mod = set.universe();
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        require(s[i] < set.sigma(), "symbol out of range");
        code = (code * set.sigma() + s[i]) % mod;
        if (i + 1 >= w && set.contains(code)) return true;
    }
    return false;
}

/// Vertex count l of a walk spelling a string of length L = l + w - 1.
inline std::uint64_t string_length_for(std::uint64_t vertices, unsigned w) {
    return vertices == 0 ? 0 : vertices + w - 1;
}

struct PathReport {
    enum class Kind { Acyclic, Cyclic };
    Kind kind = Kind::Acyclic;
    std::uint64_t longest_vertices = 0;      // valid when Acyclic
    std::vector<std::uint64_t> witness;      // a longest avoiding path
    std::vector<std::uint64_t> cycle_witness;  // closed walk, last -> first is an edge

    bool acyclic() const { return kind == Kind::Acyclic; }
};

namespace detail {

/// Kahn's algorithm on the subgraph induced by vertices outside `removed`.
/// Returns the topological order of the vertices it could peel; leftover
/// vertices (nonzero in-degree in `indeg`) lie on or downstream of a cycle.
struct Peeling {
    std::vector<std::uint32_t> order;
    std::vector<std::uint8_t> indeg;
    std::uint64_t remaining = 0;
};

inline Peeling peel(const KmerSet& removed) {
    const unsigned sigma = removed.sigma();
    const std::uint64_t n = removed.universe();
    require(n <= std::numeric_limits<std::uint32_t>::max(), "graph analysis limited to 2^32 nodes");
    const std::uint64_t top = n / sigma;

    Peeling p;
    p.indeg.assign(n, 0);
    p.remaining = n - removed.cardinality();
    for (std::uint64_t v = 0; v < n; ++v) {
        if (removed.contains(v)) continue;
        const std::uint64_t base = v / sigma;
        std::uint8_t d = 0;
        for (unsigned a = 0; a < sigma; ++a)
            if (!removed.contains(a * top + base)) ++d;
        p.indeg[v] = d;
    }
    p.order.reserve(p.remaining);
    for (std::uint64_t v = 0; v < n; ++v)
        if (!removed.contains(v) && p.indeg[v] == 0) p.order.push_back(static_cast<std::uint32_t>(v));
    for (std::size_t head = 0; head < p.order.size(); ++head) {
        const std::uint64_t v = p.order[head];
        const std::uint64_t next = (v % top) * sigma;
        for (unsigned a = 0; a < sigma; ++a) {
            const std::uint64_t u = next + a;
            if (removed.contains(u)) continue;
            if (--p.indeg[u] == 0) p.order.push_back(static_cast<std::uint32_t>(u));
        }
    }
    return p;
}

/// Walks predecessors among unpeeled vertices until one repeats.
inline std::vector<std::uint64_t> extract_cycle(const KmerSet& removed, const Peeling& p) {
    const unsigned sigma = removed.sigma();
    const std::uint64_t n = removed.universe();
    const std::uint64_t top = n / sigma;
    std::uint64_t start = 0;
    while (removed.contains(start) || p.indeg[start] == 0) ++start;

    std::vector<std::uint64_t> trail;
    std::unordered_map<std::uint64_t, std::size_t> position;
    std::uint64_t v = start;
    for (;;) {
        if (const auto it = position.find(v); it != position.end()) {
            std::vector<std::uint64_t> cycle(trail.begin() + static_cast<std::ptrdiff_t>(it->second), trail.end());
            std::reverse(cycle.begin(), cycle.end());
            return cycle;
        }
        position.emplace(v, trail.size());
        trail.push_back(v);
        const std::uint64_t base = v / sigma;
        std::uint64_t pred = n;
        for (unsigned a = 0; a < sigma; ++a) {
            const std::uint64_t u = a * top + base;
            if (!removed.contains(u) && p.indeg[u] != 0) {
                pred = u;
                break;
            }
        }
        v = pred;  // an unpeeled vertex always has an unpeeled predecessor
    }
}

}  // namespace detail

/// True iff the graph with `set` removed has no cycle.
inline bool is_decycling(const KmerSet& set) {
    const auto p = detail::peel(set);
    return p.order.size() == p.remaining;
}

/// Exact longest path avoiding `set`, measured in vertices, with a witness.
/// Ties go to the least start code, then the least successor symbol.
inline PathReport longest_remaining_path(const KmerSet& set) {
    const unsigned sigma = set.sigma();
    const std::uint64_t top = set.universe() / sigma;
    auto p = detail::peel(set);

    PathReport report;
    if (p.order.size() != p.remaining) {
        report.kind = PathReport::Kind::Cyclic;
        report.cycle_witness = detail::extract_cycle(set, p);
        return report;
    }
    if (p.remaining == 0) return report;

    // Longest path starting at each vertex, filled in reverse topological order.
    std::vector<std::uint32_t> from(set.universe(), 0);
    for (auto it = p.order.rbegin(); it != p.order.rend(); ++it) {
        const std::uint64_t v = *it;
        const std::uint64_t next = (v % top) * sigma;
        std::uint32_t best = 0;
        for (unsigned a = 0; a < sigma; ++a)
            if (!set.contains(next + a)) best = std::max(best, from[next + a]);
        from[v] = best + 1;
    }
    std::uint64_t start = 0;
    for (std::uint64_t v = 0; v < set.universe(); ++v)
        if (from[v] > from[start]) start = v;
    report.longest_vertices = from[start];
    report.witness.reserve(report.longest_vertices);
    std::uint64_t v = start;
    report.witness.push_back(v);
    while (from[v] > 1) {
        const std::uint64_t next = (v % top) * sigma;
        for (unsigned a = 0; a < sigma; ++a) {
            const std::uint64_t u = next + a;
            if (!set.contains(u) && from[u] + 1 == from[v]) {
                v = u;
                break;
            }
        }
        report.witness.push_back(v);
    }
    return report;
}

/// True iff `set` hits every walk of l vertices.
inline bool is_uhs(const KmerSet& set, std::uint64_t l) {
    const auto report = longest_remaining_path(set);
    return report.acyclic() && report.longest_vertices < l;
}

/// Checks a walk: consecutive codes are de Bruijn edges and none is in `set`.
inline bool is_avoiding_walk(const KmerSet& set, std::span<const std::uint64_t> walk, bool closed = false) {
    const std::uint64_t top = set.universe() / set.sigma();
    for (std::size_t i = 0; i < walk.size(); ++i) {
        if (walk[i] >= set.universe() || set.contains(walk[i])) return false;
        const bool last = i + 1 == walk.size();
        if (last && !closed) break;
        const std::uint64_t next = walk[last ? 0 : i + 1];
        if (next / set.sigma() != walk[i] % top) return false;
    }
    return true;
}

}  // namespace uhs
