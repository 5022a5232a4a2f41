#pragma once

// Mykkeltveit embedding P(x) = sum_i x_i r_w^{i+1} (r_w = e^{2 pi i / w}) and
// the Mykkeltveit decycling set, which takes from every conjugacy class the
// member sitting on or just below the negative real axis.
//
// Signs of Re/Im are certified: a long double evaluation decides when the
// value is clearly away from zero; otherwise an exact cyclotomic test decides
// zero, and multiprecision re-evaluation decides the sign of tiny nonzeros.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "uhs/cyclotomic.hpp"
#include "uhs/debruijn.hpp"
#include "uhs/kmer_set.hpp"

namespace uhs {

enum class Sign { Neg = -1, Zero = 0, Pos = 1 };

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::Neg: return "NEG";
        case Sign::Zero: return "ZERO";
        case Sign::Pos: return "POS";
    }
    return "?";
}

struct ComplexPoint {
    long double re = 0;
    long double im = 0;
    Sign im_sign = Sign::Zero;

    std::complex<long double> value() const { return {re, im}; }
};

/// Precomputed roots and zero test for one (sigma, w).
class Embedding {
public:
    Embedding(unsigned sigma, unsigned w)
        : sigma_(sigma), w_(w), zero_test_(w), cos_(w), sin_(w),
          threshold_(std::ldexp(1.0L, -40) * (sigma - 1) * w) {
        require(sigma >= 2 && w >= 1, "need sigma >= 2 and w >= 1");
        const long double two_pi = 2 * std::numbers::pi_v<long double>;
        for (unsigned e = 0; e < w; ++e) {
            cos_[e] = std::cos(two_pi * e / w);
            sin_[e] = std::sin(two_pi * e / w);
        }
        // Exact values at the axes keep symmetric words exactly symmetric.
        for (unsigned e = 0; e < w; ++e) {
            if (4 * e == w || 4 * e == 3 * w) cos_[e] = 0;
            if (2 * e == w || e == 0) sin_[e] = 0;
        }
    }

    unsigned sigma() const { return sigma_; }
    unsigned w() const { return w_; }
    long double threshold() const { return threshold_; }

    std::complex<long double> point(std::span<const Symbol> x) const {
        check(x);
        long double re = 0, im = 0;
        for (unsigned i = 0; i < w_; ++i) {
            const unsigned e = (i + 1) % w_;
            re += x[i] * cos_[e];
            im += x[i] * sin_[e];
        }
        return {re, im};
    }

    /// P(x) == 0, exactly.
    bool at_origin(std::span<const Symbol> x) const {
        check(x);
        std::vector<long long> g(w_, 0);
        for (unsigned i = 0; i < w_; ++i) g[(i + 1) % w_] += x[i];
        return zero_test_.vanishes(g);
    }

    Sign im_sign(std::span<const Symbol> x) const { return certified_sign(x, point(x).imag(), Part::Imag); }
    Sign re_sign(std::span<const Symbol> x) const { return certified_sign(x, point(x).real(), Part::Real); }

    ComplexPoint embed(std::span<const Symbol> x) const {
        const auto p = point(x);
        return {p.real(), p.imag(), certified_sign(x, p.imag(), Part::Imag)};
    }

private:
    enum class Part { Real, Imag };

    void check(std::span<const Symbol> x) const {
        require(x.size() == w_, "word length does not match the embedding");
    }

    Sign certified_sign(std::span<const Symbol> x, long double approx, Part part) const {
        if (approx > threshold_) return Sign::Pos;
        if (approx < -threshold_) return Sign::Neg;
        // 2 Re P = sum x_i (r^e + r^-e), 2i Im P = sum x_i (r^e - r^-e).
        std::vector<long long> g(w_, 0);
        const long long other = part == Part::Real ? 1 : -1;
        for (unsigned i = 0; i < w_; ++i) {
            g[(i + 1) % w_] += x[i];
            g[(w_ - (i + 1) % w_) % w_] += other * x[i];
        }
        if (zero_test_.vanishes(g)) return Sign::Zero;
        if (auto s = precise_sign<boost::multiprecision::cpp_bin_float_50>(x, part, 40)) return *s;
        if (auto s = precise_sign<boost::multiprecision::cpp_bin_float_100>(x, part, 90)) return *s;
        using Float250 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<250>>;
        if (auto s = precise_sign<Float250>(x, part, 240)) return *s;
        throw std::logic_error("embedding sign unresolved at 250 digits");
    }

    template <class Float>
    std::optional<Sign> precise_sign(std::span<const Symbol> x, Part part, int digits) const {
        const Float two_pi = 2 * boost::math::constants::pi<Float>();
        Float acc = 0;
        for (unsigned i = 0; i < w_; ++i) {
            if (x[i] == 0) continue;
            const Float angle = two_pi * ((i + 1) % w_) / w_;
            acc += Float(x[i]) * (part == Part::Real ? cos(angle) : sin(angle));
        }
        const Float bound = Float(sigma_ * w_) * pow(Float(10), -digits);
        if (acc > bound) return Sign::Pos;
        if (acc < -bound) return Sign::Neg;
        return std::nullopt;
    }

    unsigned sigma_;
    unsigned w_;
    RootOfUnityZeroTest zero_test_;
    std::vector<long double> cos_;
    std::vector<long double> sin_;
    long double threshold_;
};

// ---------------------------------------------------------------------------
// Single k-mer conveniences.

inline ComplexPoint embedding(const Kmer& x) {
    const Word word = x.word();
    return Embedding(x.sigma(), x.w()).embed(word);
}

inline Sign im_sign(const Kmer& x) {
    const Word word = x.word();
    return Embedding(x.sigma(), x.w()).im_sign(word);
}

/// Digit sum W(x).
inline unsigned weight(const Kmer& x) {
    unsigned total = 0;
    for (Symbol s : x.word()) total += s;
    return total;
}

/// Q(x) = P(x) - W(x).
inline std::complex<long double> weight_in_embedding(const Kmer& x) {
    return embedding(x).value() - static_cast<long double>(weight(x));
}

/// Checks P(S_a(x)) = r_w^{-1} P(x) + (a - x_0).
inline bool rotation_identity_check(const Kmer& x, Symbol a, long double eps = 1e-9L) {
    const Embedding emb(x.sigma(), x.w());
    const Word word = x.word();
    const Word next = x.successor(a).word();
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    const std::complex<long double> inv_root = std::polar(1.0L, -two_pi / x.w());
    const auto expected = inv_root * emb.point(word) + static_cast<long double>(static_cast<int>(a) - word[0]);
    return std::abs(emb.point(next) - expected) <= eps;
}

/// Complement with a -> sigma - 1 - a.
inline Kmer complement(const Kmer& x) {
    Word word = x.word();
    for (auto& s : word) s = static_cast<Symbol>(x.sigma() - 1 - s);
    return Kmer::from_word(word, x.sigma());
}

// ---------------------------------------------------------------------------
// The Mykkeltveit set.

class mykkeltveit_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct ClassPick {
    std::size_t index = 0;  // position in the rotation-ordered class
    int clause = 0;         // 1: all at origin, 2: on negative real axis, 3: just below it
};

/// Chooses the set member among a class given in rotation order (each word is
/// the pure rotation of the previous one, and the last rotates to the first).
inline ClassPick pick_from_class(const Embedding& emb, const std::vector<Word>& orbit) {
    require(!orbit.empty(), "empty conjugacy class");
    if (emb.at_origin(orbit.front())) {
        std::size_t least = 0;
        for (std::size_t i = 1; i < orbit.size(); ++i)
            if (orbit[i] < orbit[least]) least = i;
        return {least, 1};
    }
    std::vector<Sign> im(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) im[i] = emb.im_sign(orbit[i]);

    std::optional<std::size_t> on_axis;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (im[i] != Sign::Zero || emb.re_sign(orbit[i]) != Sign::Neg) continue;
        if (on_axis) throw mykkeltveit_error("two class members on the negative real axis");
        on_axis = i;
    }
    if (on_axis) return {*on_axis, 2};

    std::optional<std::size_t> below;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (im[i] != Sign::Neg || im[(i + 1) % orbit.size()] != Sign::Pos) continue;
        if (below) throw mykkeltveit_error("two class members just below the negative real axis");
        below = i;
    }
    if (!below) throw mykkeltveit_error("no class member selected; sign classification is inconsistent");
    return {*below, 3};
}

inline std::vector<Word> rotation_orbit(const Word& x) {
    std::vector<Word> orbit{x};
    for (;;) {
        Word next(orbit.back().begin() + 1, orbit.back().end());
        next.push_back(orbit.back().front());
        if (next == x) break;
        orbit.push_back(std::move(next));
    }
    return orbit;
}

/// Membership in M_{sigma,w} for a single k-mer, without building the set.
inline bool is_mykkeltveit_member(const Embedding& emb, const Word& x) {
    // Every clause picks a word with Im(P) <= 0.
    if (emb.im_sign(x) == Sign::Pos) return false;
    const auto orbit = rotation_orbit(x);
    return pick_from_class(emb, orbit).index == 0;
}

inline bool is_mykkeltveit_member(const Kmer& x) {
    return is_mykkeltveit_member(Embedding(x.sigma(), x.w()), x.word());
}

struct MykkeltveitStats {
    std::uint64_t by_clause[3] = {0, 0, 0};
};

inline KmerSet build_mykkeltveit_set(unsigned sigma, unsigned w, const Budget& budget = {},
                                     MykkeltveitStats* stats = nullptr) {
    require(w >= 2, "Mykkeltveit set needs w >= 2");
    const auto table = enumerate_classes(sigma, w, budget);
    const Embedding emb(sigma, w);
    KmerSet set(sigma, w, budget);
    std::vector<Word> orbit;
    for (std::size_t c = 0; c < table.class_count(); ++c) {
        const auto codes = table.members(c);
        orbit.clear();
        for (auto code : codes) orbit.push_back(decode(code, sigma, w));
        const auto pick = pick_from_class(emb, orbit);
        set.insert(codes[pick.index]);
        if (stats) ++stats->by_clause[pick.clause - 1];
    }
    return set;
}

}  // namespace uhs
