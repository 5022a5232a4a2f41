#pragma once

// Selection functions f: Sigma^window -> [0, positions-1]. Three realizations:
// an explicit table over all windows, a minimizer (leftmost minimal k-mer
// under a rank order), and the UHS-compatible minimizer.

#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "uhs/analysis.hpp"
#include "uhs/common.hpp"
#include "uhs/debruijn.hpp"
#include "uhs/kmer_set.hpp"

namespace uhs {

class SelectionScheme {
public:
    enum class Kind { Table, Minimizer, Compatible };

    /// Explicit f over all sigma^w windows of w symbols.
    static SelectionScheme table(unsigned sigma, unsigned w, std::vector<std::uint16_t> f, const Budget& budget = {}) {
        require(w >= 1, "window length must be at least 1");
        const std::uint64_t n = node_count(sigma, w, budget, "scheme table");
        require(f.size() == n, "table must have sigma^w entries");
        for (auto p : f) require(p < w, "table entry out of range [0, w-1]");
        SelectionScheme s(Kind::Table, sigma, w, 1);
        s.table_ = std::move(f);
        return s;
    }

    static SelectionScheme constant(unsigned sigma, unsigned w, std::uint16_t position = 0, const Budget& budget = {}) {
        return table(sigma, w, std::vector<std::uint16_t>(node_count(sigma, w, budget, "scheme table"), position),
                     budget);
    }

    /// Minimizer over windows of w k-mers; rank[code] orders the k-mers.
    static SelectionScheme minimizer(unsigned sigma, unsigned k, unsigned w, std::vector<std::uint64_t> rank,
                                     const Budget& budget = {}) {
        require(w >= 1 && k >= 1, "need w >= 1 and k >= 1");
        require(rank.size() == node_count(sigma, k, budget, "minimizer order"), "order must rank all sigma^k k-mers");
        SelectionScheme s(Kind::Minimizer, sigma, w, k);
        s.rank_ = std::move(rank);
        return s;
    }

    static SelectionScheme lexicographic_minimizer(unsigned sigma, unsigned k, unsigned w, const Budget& budget = {}) {
        std::vector<std::uint64_t> rank(node_count(sigma, k, budget, "minimizer order"));
        for (std::uint64_t i = 0; i < rank.size(); ++i) rank[i] = i;
        return minimizer(sigma, k, w, std::move(rank), budget);
    }

    /// g_k: a local scheme on windows of w + k - 1 symbols that applies `inner`
    /// to the first w symbols and ignores the trailing k - 1. Same density.
    static SelectionScheme ignoring_tail(SelectionScheme inner, unsigned k) {
        require(k >= 1, "k must be at least 1");
        require(inner.kind_ == Kind::Table && inner.tail_ == 0, "tail extension applies to table schemes");
        inner.tail_ = k - 1;
        inner.tail_pow_ = static_cast<std::uint64_t>(checked_pow(inner.sigma_, inner.tail_));
        return inner;
    }

    Kind kind() const { return kind_; }
    unsigned sigma() const { return sigma_; }
    /// Number of selectable positions per window (the w of the scheme).
    unsigned positions() const { return w_; }
    /// k-mer length: 1 for selection schemes.
    unsigned k() const { return k_; }
    unsigned window_symbols() const { return w_ + k_ - 1 + tail_; }
    /// Minimizers are forward by construction; tables must be checked.
    bool known_forward() const { return kind_ != Kind::Table; }

    const std::vector<std::uint16_t>& table_entries() const { return table_; }
    const std::vector<std::uint64_t>& ranks() const { return rank_; }

    std::uint32_t select(std::span<const Symbol> window) const {
        require(window.size() == window_symbols(), "window has " + std::to_string(window.size()) +
                                                        " symbols, scheme expects " + std::to_string(window_symbols()));
        for (Symbol s : window) require(s < sigma_, "symbol out of range");
        if (kind_ == Kind::Table) return table_[static_cast<std::uint64_t>(encode(window.first(w_), sigma_))];
        std::uint32_t best = 0;
        std::uint64_t best_rank = 0;
        for (std::uint32_t i = 0; i < w_; ++i) {
            const auto r = rank_[static_cast<std::uint64_t>(encode(window.subspan(i, k_), sigma_))];
            if (i == 0 || r < best_rank) {
                best = i;
                best_rank = r;
            }
        }
        return best;
    }

    /// f applied to the window with the given code (window_symbols digits).
    std::uint32_t select_code(std::uint64_t window) const {
        if (kind_ == Kind::Table) return table_[window / tail_pow_];
        const std::uint64_t kmod = rank_.size();
        std::uint64_t shift = kmer_shift_;  // sigma^(window_symbols - k)
        std::uint32_t best = 0;
        std::uint64_t best_rank = 0;
        for (std::uint32_t i = 0; i < w_; ++i, shift /= sigma_) {
            const auto r = rank_[(window / shift) % kmod];
            if (i == 0 || r < best_rank) {
                best = i;
                best_rank = r;
            }
        }
        return best;
    }

    /// In-window offset selected for every window of s, in order.
    std::vector<std::uint32_t> select_all(std::span<const Symbol> s) const {
        const unsigned ws = window_symbols();
        require(s.size() >= ws, "string shorter than one window");
        for (Symbol c : s) require(c < sigma_, "symbol out of range");
        const std::size_t windows = s.size() - ws + 1;
        std::vector<std::uint32_t> out(windows);
        if (kind_ == Kind::Table) {
            const std::uint64_t mod = table_.size();
            std::uint64_t code = 0;
            for (std::size_t i = 0; i < w_ - 1; ++i) code = code * sigma_ + s[i];
            for (std::size_t i = 0; i < windows; ++i) {
                code = (code * sigma_ + s[i + w_ - 1]) % mod;
                out[i] = table_[code];
            }
            return out;
        }
        // Sliding minimum over k-mer ranks; on equal ranks the earlier k-mer stays in front.
        const std::uint64_t kmod = rank_.size();
        const std::size_t nk = s.size() - k_ + 1;
        std::vector<std::uint64_t> ranks(nk);
        std::uint64_t code = 0;
        for (std::size_t i = 0; i + 1 < k_; ++i) code = code * sigma_ + s[i];
        for (std::size_t i = 0; i < nk; ++i) {
            code = (code * sigma_ + s[i + k_ - 1]) % kmod;
            ranks[i] = rank_[code];
        }
        std::deque<std::size_t> mins;
        for (std::size_t j = 0; j < nk; ++j) {
            while (!mins.empty() && ranks[mins.back()] > ranks[j]) mins.pop_back();
            mins.push_back(j);
            if (j + 1 < w_) continue;
            const std::size_t start = j + 1 - w_;
            while (mins.front() < start) mins.pop_front();
            if (start < windows) out[start] = static_cast<std::uint32_t>(mins.front() - start);
        }
        return out;
    }

private:
    SelectionScheme(Kind kind, unsigned sigma, unsigned w, unsigned k) : kind_(kind), sigma_(sigma), w_(w), k_(k) {
        require(sigma >= 2 && sigma <= 255, "alphabet size must be in [2, 255]");
        require(w <= 65535, "window too long");
        if (kind != Kind::Table) {
            const code_t shift = checked_pow(sigma, w - 1);
            require(shift <= std::numeric_limits<std::uint64_t>::max(), "minimizer window too long for 64-bit codes");
            kmer_shift_ = static_cast<std::uint64_t>(shift);
        }
    }
    friend SelectionScheme with_kind(SelectionScheme s, Kind kind);

    Kind kind_;
    unsigned sigma_;
    unsigned w_;
    unsigned k_;
    unsigned tail_ = 0;
    std::uint64_t tail_pow_ = 1;
    std::uint64_t kmer_shift_ = 1;
    std::vector<std::uint16_t> table_;
    std::vector<std::uint64_t> rank_;

};

inline SelectionScheme with_kind(SelectionScheme s, SelectionScheme::Kind kind) {
    s.kind_ = kind;
    return s;
}

/// f on every window code, sigma^window_symbols entries.
inline std::vector<std::uint16_t> evaluate_all(const SelectionScheme& f, const Budget& budget = {}) {
    const std::uint64_t n = node_count(f.sigma(), f.window_symbols(), budget, "scheme evaluation");
    std::vector<std::uint16_t> out(n);
    for (std::uint64_t c = 0; c < n; ++c) out[c] = static_cast<std::uint16_t>(f.select_code(c));
    return out;
}

/// Exhaustive check of f(w2) >= f(w1) - 1 over all consecutive window pairs.
inline bool is_forward(const SelectionScheme& f, const Budget& budget = {}) {
    const unsigned ws = f.window_symbols();
    const std::uint64_t pairs = node_count(f.sigma(), ws + 1, budget, "forward check");
    const auto values = evaluate_all(f, budget);
    const std::uint64_t mod = values.size();
    for (std::uint64_t c = 0; c < pairs; ++c) {
        const std::uint32_t first = values[c / f.sigma()];
        const std::uint32_t second = values[c % mod];
        if (second + 1 < first) return false;
    }
    return true;
}

enum class UhsCheck { Holds, Fails, Unverified };

struct CompatibleMinimizer {
    SelectionScheme scheme;
    UhsCheck check = UhsCheck::Unverified;
};

/// Minimizer whose order ranks every member of U before every non-member,
/// lexicographically within each group. `budget` bounds only the UHS check.
inline CompatibleMinimizer build_compatible_minimizer(const KmerSet& u, unsigned window_positions,
                                                      const Budget& budget = {}) {
    require(u.cardinality() > 0, "compatible minimizer needs a nonempty set");
    require(window_positions >= 1, "window must hold at least one k-mer");
    std::vector<std::uint64_t> rank(u.universe());
    for (std::uint64_t x = 0; x < rank.size(); ++x) rank[x] = u.contains(x) ? x : u.universe() + x;
    auto scheme = with_kind(SelectionScheme::minimizer(u.sigma(), u.w(), window_positions, std::move(rank),
                                                       Budget{u.universe()}),
                            SelectionScheme::Kind::Compatible);
    UhsCheck check = UhsCheck::Unverified;
    if (u.universe() <= budget.max_nodes) check = is_uhs(u, window_positions) ? UhsCheck::Holds : UhsCheck::Fails;
    return {std::move(scheme), check};
}

// ---------------------------------------------------------------------------
// Scheme table file: "scheme sigma=<s> w=<w>", then sigma^w lines "<kmer> <pos>".

inline void write_table(std::ostream& out, const SelectionScheme& f) {
    require(f.kind() == SelectionScheme::Kind::Table && f.window_symbols() == f.positions(),
            "only plain table schemes have a table file form");
    const Alphabet alpha(f.sigma());
    out << "scheme sigma=" << f.sigma() << " w=" << f.positions() << '\n';
    const auto& t = f.table_entries();
    for (std::uint64_t c = 0; c < t.size(); ++c)
        out << format_word(decode(c, f.sigma(), f.positions()), alpha) << ' ' << t[c] << '\n';
}

inline SelectionScheme read_table(std::istream& in, const Budget& budget = {}) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "empty scheme file");
    const auto [sigma, w] = detail::parse_header(detail::trim(line), "scheme");
    const std::uint64_t n = node_count(sigma, w, budget, "scheme table");
    std::vector<std::uint16_t> f(n);
    std::vector<bool> seen(n, false);
    std::uint64_t filled = 0;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string kmer;
        long pos = -1;
        fields >> kmer >> pos;
        require(!fields.fail() && pos >= 0 && pos < static_cast<long>(w), "bad scheme line '" + line + "'");
        const Word word = parse_word(kmer, Alphabet(sigma));
        require(word.size() == w, "window '" + kmer + "' has wrong length");
        const auto code = static_cast<std::uint64_t>(encode(word, sigma));
        require(!seen[code], "duplicate window '" + kmer + "'");
        seen[code] = true;
        f[code] = static_cast<std::uint16_t>(pos);
        ++filled;
    }
    require(filled == n, "scheme file must list all sigma^w windows");
    return SelectionScheme::table(sigma, w, std::move(f), budget);
}

/// Minimizer order file: one k-mer per line, rank = line number (0-based).
inline std::vector<std::uint64_t> read_order(std::istream& in, const Alphabet& alpha, unsigned& k_out,
                                             const Budget& budget = {}) {
    std::vector<std::uint64_t> codes;
    std::string line;
    unsigned k = 0;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        const Word word = parse_word(line, alpha);
        if (k == 0) k = static_cast<unsigned>(word.size());
        require(word.size() == k, "order file mixes k-mer lengths");
        codes.push_back(static_cast<std::uint64_t>(encode(word, alpha.sigma)));
    }
    require(k > 0, "empty order file");
    const std::uint64_t n = node_count(alpha.sigma, k, budget, "minimizer order");
    require(codes.size() == n, "order file must list all sigma^k k-mers");
    std::vector<std::uint64_t> rank(n, n);
    for (std::uint64_t i = 0; i < n; ++i) {
        require(rank[codes[i]] == n, "order file lists a k-mer twice");
        rank[codes[i]] = i;
    }
    k_out = k;
    return rank;
}

}  // namespace uhs
