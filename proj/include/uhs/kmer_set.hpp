#pragma once

// Membership bitmap over all sigma^w w-mers, with the text and binary set
// file formats.

#include <bit>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "uhs/common.hpp"
#include "uhs/debruijn.hpp"

namespace uhs {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(unsigned sigma, unsigned n) {
    return boost::multiprecision::pow(BigInt(sigma), n);
}

class KmerSet {
public:
    KmerSet() = default;
    KmerSet(unsigned sigma, unsigned w, const Budget& budget = {})
        : sigma_(sigma), w_(w), universe_(node_count(sigma, w, budget, "k-mer set")),
          bits_((universe_ + 63) / 64, 0) {
        require(sigma >= 2 && w >= 1, "need sigma >= 2 and w >= 1");
    }

    template <class Pred>
    static KmerSet from_predicate(unsigned sigma, unsigned w, Pred&& pred, const Budget& budget = {}) {
        KmerSet s(sigma, w, budget);
        for (std::uint64_t x = 0; x < s.universe_; ++x)
            if (pred(x)) s.insert(x);
        return s;
    }

    static KmerSet full(unsigned sigma, unsigned w, const Budget& budget = {}) {
        return from_predicate(sigma, w, [](std::uint64_t) { return true; }, budget);
    }

    unsigned sigma() const { return sigma_; }
    unsigned w() const { return w_; }
    std::uint64_t universe() const { return universe_; }
    std::uint64_t cardinality() const { return count_; }

    bool contains(std::uint64_t code) const { return (bits_[code >> 6] >> (code & 63)) & 1U; }
    bool contains(const Kmer& x) const {
        require(x.sigma() == sigma_ && x.w() == w_, "k-mer shape does not match set");
        return contains(static_cast<std::uint64_t>(x.code()));
    }

    void insert(std::uint64_t code) {
        require(code < universe_, "k-mer code out of range");
        auto& word = bits_[code >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (code & 63);
        if (!(word & mask)) {
            word |= mask;
            ++count_;
        }
    }
    void insert(const Kmer& x) { insert(static_cast<std::uint64_t>(x.code())); }

    void erase(std::uint64_t code) {
        require(code < universe_, "k-mer code out of range");
        auto& word = bits_[code >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (code & 63);
        if (word & mask) {
            word &= ~mask;
            --count_;
        }
    }

    std::vector<std::uint64_t> members() const {
        std::vector<std::uint64_t> out;
        out.reserve(count_);
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            std::uint64_t word = bits_[i];
            while (word) {
                out.push_back(i * 64 + static_cast<unsigned>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
        return out;
    }

    /// |set| / sigma^w, exact.
    Rational relative_size() const { return Rational(BigInt(count_), big_pow(sigma_, w_)); }

    const std::vector<std::uint64_t>& words() const { return bits_; }

    friend bool operator==(const KmerSet& a, const KmerSet& b) {
        return a.sigma_ == b.sigma_ && a.w_ == b.w_ && a.count_ == b.count_ && a.bits_ == b.bits_;
    }

private:
    unsigned sigma_ = 2;
    unsigned w_ = 1;
    std::uint64_t universe_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline Rational relative_size(const KmerSet& set) { return set.relative_size(); }

// ---------------------------------------------------------------------------
// Text form: "uhs sigma=<s> w=<w>" then one k-mer per line, ascending codes.

inline void write_text(std::ostream& out, const KmerSet& set, bool acgt = false) {
    const Alphabet alpha(set.sigma(), acgt);
    out << "uhs sigma=" << set.sigma() << " w=" << set.w() << '\n';
    for (std::uint64_t x : set.members()) out << format_word(decode(x, set.sigma(), set.w()), alpha) << '\n';
}

namespace detail {

/// Parses "<tag> sigma=<s> w=<w>" headers shared by the set and scheme files.
inline std::pair<unsigned, unsigned> parse_header(const std::string& line, const std::string& tag) {
    std::istringstream in(line);
    std::string word, sigma_field, w_field;
    in >> word >> sigma_field >> w_field;
    require(word == tag && sigma_field.rfind("sigma=", 0) == 0 && w_field.rfind("w=", 0) == 0,
            "expected header '" + tag + " sigma=<s> w=<w>', got '" + line + "'");
    const unsigned long sigma = std::stoul(sigma_field.substr(6));
    const unsigned long w = std::stoul(w_field.substr(2));
    require(sigma >= 2 && sigma <= 255 && w >= 1, "bad header values in '" + line + "'");
    return {static_cast<unsigned>(sigma), static_cast<unsigned>(w)};
}

inline std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

}  // namespace detail

inline KmerSet read_text(std::istream& in, const Budget& budget = {}) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "empty set file");
    const auto [sigma, w] = detail::parse_header(detail::trim(line), "uhs");
    KmerSet set(sigma, w, budget);
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        const bool acgt = sigma == 4 && !line.empty() && !(line[0] >= '0' && line[0] <= '9');
        const Word word = parse_word(line, Alphabet(sigma, acgt));
        require(word.size() == w, "k-mer '" + line + "' has wrong length");
        set.insert(static_cast<std::uint64_t>(encode(word, sigma)));
    }
    return set;
}

// ---------------------------------------------------------------------------
// Binary form: "UHS1", sigma (1 byte), w (u32 LE), then ceil(sigma^w/8) bytes,
// bit i of the stream (LSB first within each byte) = membership of code i.

inline void write_binary(std::ostream& out, const KmerSet& set) {
    out.write("UHS1", 4);
    out.put(static_cast<char>(set.sigma()));
    const std::uint32_t w = set.w();
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((w >> (8 * i)) & 0xFF));
    const std::uint64_t nbytes = (set.universe() + 7) / 8;
    const auto& words = set.words();
    for (std::uint64_t b = 0; b < nbytes; ++b) out.put(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF));
}

inline KmerSet read_binary(std::istream& in, const Budget& budget = {}) {
    char magic[4];
    require(static_cast<bool>(in.read(magic, 4)) && std::string(magic, 4) == "UHS1", "bad binary set magic");
    const int sigma = in.get();
    unsigned char wb[4];
    require(sigma != EOF && static_cast<bool>(in.read(reinterpret_cast<char*>(wb), 4)), "truncated binary set header");
    const std::uint32_t w = wb[0] | (wb[1] << 8) | (wb[2] << 16) | (static_cast<std::uint32_t>(wb[3]) << 24);
    KmerSet set(static_cast<unsigned>(sigma), w, budget);
    const std::uint64_t nbytes = (set.universe() + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b) {
        const int byte = in.get();
        require(byte != EOF, "truncated binary set body");
        for (unsigned bit = 0; bit < 8; ++bit) {
            if (!((byte >> bit) & 1)) continue;
            const std::uint64_t code = b * 8 + bit;
            require(code < set.universe(), "binary set has bits past the universe");
            set.insert(code);
        }
    }
    return set;
}

/// Reads either form, sniffing the magic bytes.
inline KmerSet read_set(std::istream& in, const Budget& budget = {}) {
    if (in.peek() == 'U') return read_binary(in, budget);
    return read_text(in, budget);
}

}  // namespace uhs
