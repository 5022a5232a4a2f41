#pragma once

// Exhaustive census of minimum decycling sets (one vertex per conjugacy
// class, complement acyclic) for small binary de Bruijn graphs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "uhs/debruijn.hpp"
#include "uhs/kmer_set.hpp"

namespace uhs {

struct MdsCensus {
    unsigned sigma = 2;
    unsigned w = 0;
    std::uint64_t mds_count = 0;
    std::uint64_t nodes_explored = 0;
    std::uint64_t prunes = 0;
};

inline constexpr unsigned kMdsDefaultMaxW = 5;
inline constexpr unsigned kMdsHardMaxW = 7;

namespace detail {

class MdsSearch {
public:
    MdsSearch(unsigned w, const std::function<void(const KmerSet&)>& emit)
        : w_(w), n_(std::uint32_t{1} << w), emit_(emit), live_(n_, 0), mark_(n_, 0) {
        const auto table = enumerate_classes(2, w);
        for (std::size_t c = 0; c < table.class_count(); ++c) {
            std::vector<std::uint32_t> members;
            for (auto m : table.members(c)) members.push_back(static_cast<std::uint32_t>(m));
            classes_.push_back(std::move(members));
        }
        // Small classes first: forced singletons, then by representative.
        std::stable_sort(classes_.begin(), classes_.end(),
                         [](const auto& a, const auto& b) { return a.size() < b.size(); });
        chosen_.resize(classes_.size());
    }

    MdsCensus run() {
        census_.w = w_;
        recurse(0);
        return census_;
    }

private:
    /// Whether `start` lies on a cycle among live vertices.
    bool on_cycle(std::uint32_t start) {
        ++stamp_;
        stack_.clear();
        stack_.push_back(start);
        while (!stack_.empty()) {
            const std::uint32_t v = stack_.back();
            stack_.pop_back();
            const std::uint32_t next = (v << 1) & (n_ - 1);
            for (std::uint32_t a = 0; a < 2; ++a) {
                const std::uint32_t u = next | a;
                if (!live_[u]) continue;
                if (u == start) return true;
                if (mark_[u] == stamp_) continue;
                mark_[u] = stamp_;
                stack_.push_back(u);
            }
        }
        return false;
    }

    void recurse(std::size_t level) {
        ++census_.nodes_explored;
        if (level == classes_.size()) {
            ++census_.mds_count;
            if (emit_) {
                KmerSet set(2, w_);
                for (auto v : chosen_) set.insert(v);
                emit_(set);
            }
            return;
        }
        const auto& members = classes_[level];
        for (std::uint32_t pick : members) {
            for (std::uint32_t v : members) live_[v] = v != pick;
            bool cyclic = false;
            for (std::uint32_t v : members)
                if (v != pick && on_cycle(v)) {
                    cyclic = true;
                    break;
                }
            if (cyclic) {
                ++census_.prunes;
            } else {
                chosen_[level] = pick;
                recurse(level + 1);
            }
            for (std::uint32_t v : members) live_[v] = 0;
        }
    }

    unsigned w_;
    std::uint32_t n_;
    const std::function<void(const KmerSet&)>& emit_;
    std::vector<std::vector<std::uint32_t>> classes_;
    std::vector<std::uint32_t> chosen_;
    std::vector<std::uint8_t> live_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<std::uint32_t> stack_;
    MdsCensus census_;
};

}  // namespace detail

/// Counts every way to pick one w-mer per conjugacy class whose removal leaves
/// the binary de Bruijn graph acyclic. A partial pick is cut as soon as the
/// vertices of the decided classes that remain contain a cycle. `emit`, when
/// set, receives each set as it is found.
inline MdsCensus enumerate_mds(unsigned sigma, unsigned w, const std::function<void(const KmerSet&)>& emit = {},
                               unsigned max_w = kMdsDefaultMaxW) {
    require(sigma == 2, "MDS census supports sigma = 2 only");
    require(w >= 1, "w must be at least 1");
    require(max_w <= kMdsHardMaxW, "MDS census is capped at w = 7");
    if (w > max_w)
        throw budget_error("MDS census for w=" + std::to_string(w) + " exceeds the cap w <= " + std::to_string(max_w) +
                           " (raise it explicitly for w = 6, 7)");
    return detail::MdsSearch(w, emit).run();
}

}  // namespace uhs
