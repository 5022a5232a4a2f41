#pragma once

// k-mer encoding, implicit de Bruijn graph navigation, conjugacy classes,
// necklace counting and de Bruijn sequences.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uhs/common.hpp"

namespace uhs {

/// Symbols are 0..sigma-1. Text form is decimal digits, or ACGT when sigma == 4
/// and `acgt` is set.
struct Alphabet {
    unsigned sigma = 2;
    bool acgt = false;

    explicit Alphabet(unsigned s = 2, bool use_acgt = false) : sigma(s), acgt(use_acgt) {
        require(sigma >= 2, "alphabet size must be at least 2");
        require(!acgt || sigma == 4, "ACGT rendering requires sigma = 4");
        require(sigma <= 255, "alphabet size must fit in one byte");
    }
};

inline Symbol parse_symbol(char c, const Alphabet& alpha) {
    if (alpha.acgt) {
        switch (c) {
            case 'A': case 'a': return 0;
            case 'C': case 'c': return 1;
            case 'G': case 'g': return 2;
            case 'T': case 't': return 3;
            default: throw std::invalid_argument(std::string("not a nucleotide: '") + c + "'");
        }
    }
    require(alpha.sigma <= 10, "text form needs sigma <= 10");
    require(c >= '0' && c <= '9', std::string("not a digit: '") + c + "'");
    const auto s = static_cast<Symbol>(c - '0');
    require(s < alpha.sigma, std::string("symbol '") + c + "' out of range for sigma=" + std::to_string(alpha.sigma));
    return s;
}

inline char format_symbol(Symbol s, const Alphabet& alpha) {
    if (alpha.acgt) return "ACGT"[s];
    return static_cast<char>('0' + s);
}

inline Word parse_word(std::string_view text, const Alphabet& alpha) {
    Word out;
    out.reserve(text.size());
    for (char c : text) out.push_back(parse_symbol(c, alpha));
    return out;
}

inline std::string format_word(std::span<const Symbol> word, const Alphabet& alpha) {
    std::string out;
    out.reserve(word.size());
    for (Symbol s : word) out.push_back(format_symbol(s, alpha));
    return out;
}

/// Positional base-sigma code of `word`, word[0] most significant.
inline code_t encode(std::span<const Symbol> word, unsigned sigma) {
    require(!word.empty(), "cannot encode an empty string");
    checked_pow(sigma, static_cast<unsigned>(word.size()));
    code_t code = 0;
    for (Symbol s : word) {
        require(s < sigma, "symbol " + std::to_string(s) + " out of range for sigma=" + std::to_string(sigma));
        code = code * sigma + s;
    }
    return code;
}

inline Word decode(code_t code, unsigned sigma, unsigned w) {
    Word out(w);
    for (unsigned i = w; i-- > 0;) {
        out[i] = static_cast<Symbol>(code % sigma);
        code /= sigma;
    }
    return out;
}

/// A w-mer over an alphabet of size sigma.
class Kmer {
public:
    Kmer(code_t code, unsigned sigma, unsigned w) : code_(code), sigma_(sigma), w_(w) {
        require(sigma >= 2, "alphabet size must be at least 2");
        require(w >= 1, "k-mer length must be at least 1");
        require(code < checked_pow(sigma, w), "k-mer code out of range");
    }

    static Kmer from_word(std::span<const Symbol> word, unsigned sigma) {
        return Kmer(encode(word, sigma), sigma, static_cast<unsigned>(word.size()));
    }
    static Kmer parse(std::string_view text, const Alphabet& alpha) {
        return from_word(parse_word(text, alpha), alpha.sigma);
    }

    code_t code() const { return code_; }
    unsigned sigma() const { return sigma_; }
    unsigned w() const { return w_; }

    Symbol symbol(unsigned i) const {
        return static_cast<Symbol>((code_ / checked_pow(sigma_, w_ - 1 - i)) % sigma_);
    }
    Word word() const { return decode(code_, sigma_, w_); }
    std::string str(const Alphabet& alpha) const { return format_word(word(), alpha); }
    std::string str() const { return str(Alphabet(sigma_)); }

    /// S_a(x) = x_1 ... x_{w-1} a.
    Kmer successor(Symbol a) const {
        require(a < sigma_, "successor symbol out of range");
        return Kmer((code_ * sigma_ + a) % checked_pow(sigma_, w_), sigma_, w_);
    }

    /// R(x) = S_{x_0}(x).
    Kmer pure_rotation() const { return successor(symbol(0)); }

    friend bool operator==(const Kmer&, const Kmer&) = default;
    friend auto operator<=>(const Kmer& a, const Kmer& b) {
        if (auto c = a.sigma_ <=> b.sigma_; c != 0) return c;
        if (auto c = a.w_ <=> b.w_; c != 0) return c;
        if (a.code_ < b.code_) return std::strong_ordering::less;
        if (a.code_ > b.code_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    code_t code_;
    unsigned sigma_;
    unsigned w_;
};

/// Distinct rotations of x, starting from the lexicographically least one.
inline std::vector<Kmer> conjugacy_class(const Kmer& x) {
    std::vector<Kmer> orbit{x};
    for (Kmer y = x.pure_rotation(); y != x; y = y.pure_rotation()) orbit.push_back(y);
    const auto least = std::min_element(orbit.begin(), orbit.end());
    std::rotate(orbit.begin(), least, orbit.end());
    return orbit;
}

namespace detail {

inline code_t checked_add(code_t a, code_t b) {
    if (a > std::numeric_limits<code_t>::max() - b) throw std::overflow_error("necklace count overflows 128 bits");
    return a + b;
}

inline code_t checked_mul(code_t a, code_t b) {
    if (b != 0 && a > std::numeric_limits<code_t>::max() / b)
        throw std::overflow_error("necklace count overflows 128 bits");
    return a * b;
}

inline std::uint64_t totient(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

}  // namespace detail

/// Number of conjugacy classes of w-mers: (1/w) sum_{d | w} phi(d) sigma^{w/d}.
inline code_t necklace_count(unsigned sigma, unsigned w) {
    require(sigma >= 2, "alphabet size must be at least 2");
    require(w >= 1, "word length must be at least 1");
    code_t total = 0;
    for (unsigned d = 1; d <= w; ++d) {
        if (w % d != 0) continue;
        total = detail::checked_add(total, detail::checked_mul(detail::totient(d), checked_pow(sigma, w / d)));
    }
    return total / w;
}

/// Partition of all sigma^w w-mers into conjugacy classes.
struct NecklaceTable {
    unsigned sigma = 2;
    unsigned w = 1;
    std::vector<std::uint32_t> class_of;       // class index by k-mer code
    std::vector<std::uint64_t> representative;  // least member of each class
    std::vector<std::uint32_t> size;            // class size (the shortest period)

    std::size_t class_count() const { return representative.size(); }

    /// Members of class `c` in rotation order starting at the representative.
    std::vector<std::uint64_t> members(std::size_t c) const {
        const std::uint64_t top = class_of.size() / sigma;
        std::vector<std::uint64_t> out{representative[c]};
        for (std::uint32_t i = 1; i < size[c]; ++i) {
            const std::uint64_t x = out.back();
            out.push_back((x % top) * sigma + x / top);
        }
        return out;
    }
};

inline NecklaceTable enumerate_classes(unsigned sigma, unsigned w, const Budget& budget = {}) {
    require(sigma >= 2 && w >= 1, "need sigma >= 2 and w >= 1");
    const std::uint64_t n = node_count(sigma, w, budget, "necklace table");
    require(n <= std::numeric_limits<std::uint32_t>::max(), "necklace table limited to 2^32 nodes");
    const std::uint64_t top = n / sigma;
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();

    NecklaceTable table;
    table.sigma = sigma;
    table.w = w;
    table.class_of.assign(n, kUnset);
    for (std::uint64_t x = 0; x < n; ++x) {
        if (table.class_of[x] != kUnset) continue;
        // x is the least member since smaller codes were already assigned.
        const auto id = static_cast<std::uint32_t>(table.representative.size());
        std::uint32_t period = 0;
        std::uint64_t y = x;
        do {
            table.class_of[y] = id;
            ++period;
            y = (y % top) * sigma + y / top;
        } while (y != x);
        table.representative.push_back(x);
        table.size.push_back(period);
    }
    return table;
}

/// Lexicographically least cyclic de Bruijn sequence of order n (length sigma^n),
/// by concatenating Lyndon words whose length divides n.
inline Word debruijn_cycle(unsigned sigma, unsigned n, const Budget& budget = {}) {
    require(sigma >= 2 && n >= 1, "need sigma >= 2 and n >= 1");
    const std::uint64_t total = node_count(sigma, n, budget, "de Bruijn sequence");
    Word seq;
    seq.reserve(total);
    std::vector<int> lyndon{-1};
    while (!lyndon.empty()) {
        ++lyndon.back();
        const std::size_t m = lyndon.size();
        if (n % m == 0)
            for (int s : lyndon) seq.push_back(static_cast<Symbol>(s));
        while (lyndon.size() < n) lyndon.push_back(lyndon[lyndon.size() - m]);
        while (!lyndon.empty() && lyndon.back() == static_cast<int>(sigma) - 1) lyndon.pop_back();
    }
    return seq;
}

/// Linear de Bruijn sequence: the cycle followed by its first n-1 symbols.
inline Word debruijn_sequence(unsigned sigma, unsigned n, const Budget& budget = {}) {
    Word seq = debruijn_cycle(sigma, n, budget);
    const std::size_t cycle = seq.size();
    for (std::size_t i = 0; i + 1 < n; ++i) seq.push_back(seq[i % cycle]);
    return seq;
}

}  // namespace uhs
