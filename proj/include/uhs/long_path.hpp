#pragma once

// Explicit path of Omega(w^2) vertices avoiding the Mykkeltveit set.
//
// The w-mer is modelled as a ring tape with a pointer: a pure rotation moves
// the pointer, an impure rotation S_0 writes 0 under the pointer first. Each
// round zeroes the four tags of one quadruple whose roots of unity cancel, so
// the embedding returns to where it started while staying above the real axis.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "uhs/debruijn.hpp"
#include "uhs/mykkeltveit.hpp"

namespace uhs {

struct RingState {
    Word tape;
    unsigned pointer = 0;

    /// The w-mer read from the pointer around the ring.
    Word current() const {
        Word out(tape.size());
        for (std::size_t i = 0; i < tape.size(); ++i) out[i] = tape[(pointer + i) % tape.size()];
        return out;
    }
    void rotate() { pointer = (pointer + 1) % tape.size(); }
    void write_and_rotate(Symbol a) {
        tape[pointer] = a;
        rotate();
    }
};

struct LongPathValidation {
    bool ok = true;
    std::optional<std::size_t> first_bad_step;
    std::string reason;
};

struct LongPath {
    unsigned sigma = 2;
    unsigned w = 0;
    std::vector<Word> vertices;
    std::vector<ComplexPoint> embeddings;
    std::vector<std::array<unsigned, 4>> quadruples;
    std::vector<std::size_t> round_starts;  // index of each round's first vertex
    LongPathValidation validation;
};

namespace detail {

inline long double root_real(unsigned w, unsigned tag) {
    return std::cos(2 * std::numbers::pi_v<long double> * ((tag + 1) % w) / w);
}

/// Quadruple tags for even w = 2m: {a-j, a+j, b-j, b+j}, a = m-1, b = w-1, j = 1..ceil(w/8).
inline std::vector<std::array<unsigned, 4>> even_quadruples(unsigned w) {
    const unsigned m = w / 2, a = m - 1, b = w - 1;
    std::vector<std::array<unsigned, 4>> out;
    for (unsigned j = 1; j <= (w + 7) / 8; ++j) out.push_back({(a + w - j) % w, (a + j) % w, (b + w - j) % w, (b + j) % w});
    return out;
}

/// Imperfect quadruples for odd w = 2m+1, alternating between the two
/// candidates to keep the running real offset near -1.
inline std::vector<std::array<unsigned, 4>> odd_quadruples(unsigned w, long double start_offset) {
    const unsigned m = (w - 1) / 2, a0 = m - 1, a1 = m, b = w - 1;
    const unsigned j_first = std::max(1U, (w + 19) / 20);
    const unsigned j_last = w / 10;
    std::vector<std::array<unsigned, 4>> out;
    long double level = start_offset;
    for (unsigned j = j_first; j <= j_last; j += 2) {
        const std::array<unsigned, 4> plus{(a0 + w - j) % w, (a1 + j) % w, (b + w - j) % w, (b + j) % w};
        const std::array<unsigned, 4> minus{(a0 + w - j + 1) % w, (a1 + j - 1) % w, (b + w - j) % w, (b + j) % w};
        auto sum = [&](const std::array<unsigned, 4>& q) {
            long double s = 0;
            for (unsigned t : q) s += root_real(w, t);
            return s;
        };
        const auto& chosen = level < -1 ? minus : plus;
        level -= sum(chosen);
        out.push_back(chosen);
    }
    return out;
}

}  // namespace detail

/// Runs the rotation program without throwing; `validation` reports the first
/// vertex that is not a de Bruijn successor, is a set member, or is not
/// certified strictly above the real axis.
inline LongPath trace_long_path(unsigned sigma, unsigned w) {
    require(sigma >= 2, "alphabet size must be at least 2");
    require(w >= 5, "long path needs w >= 5");
    LongPath path;
    path.sigma = sigma;
    path.w = w;

    RingState ring{Word(w, 1), 0};
    if (w % 2 == 0) {
        ring.tape[w - 1] = 0;
        path.quadruples = detail::even_quadruples(w);
    } else {
        // Zeroing only tag b puts the start exactly at -1, as for even w. The
        // imperfect quadruples around a0 = m-1, a1 = m keep it on the real axis.
        ring.tape[w - 1] = 0;
        long double start = 0;
        for (unsigned t = 0; t < w; ++t)
            if (ring.tape[t]) start += detail::root_real(w, t);
        path.quadruples = detail::odd_quadruples(w, start);
    }
    require(!path.quadruples.empty(), "no quadruples for w=" + std::to_string(w));
    std::vector<bool> used(w, false);
    for (const auto& q : path.quadruples)
        for (unsigned t : q) {
            require(ring.tape[t] == 1 && !used[t], "quadruple tags overlap for w=" + std::to_string(w));
            used[t] = true;
        }

    // The start word sits on the negative real axis (a set member); the path
    // begins after the first pure rotation.
    ring.rotate();
    path.vertices.push_back(ring.current());
    for (const auto& q : path.quadruples) {
        path.round_starts.push_back(path.vertices.size());
        for (unsigned tag : q) {
            do {
                ring.rotate();
                path.vertices.push_back(ring.current());
            } while (ring.pointer != tag);
            ring.write_and_rotate(0);
            path.vertices.push_back(ring.current());
        }
    }

    const Embedding emb(sigma, w);
    path.embeddings.reserve(path.vertices.size());
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        const Word& x = path.vertices[i];
        path.embeddings.push_back(emb.embed(x));
        if (!path.validation.ok) continue;
        auto fail = [&](std::string why) {
            path.validation = {false, i, std::move(why)};
        };
        if (i > 0 && !std::equal(x.begin(), x.end() - 1, path.vertices[i - 1].begin() + 1))
            fail("not a de Bruijn successor of the previous vertex");
        else if (path.embeddings.back().im_sign != Sign::Pos)
            fail(std::string("Im(P) is ") + to_string(path.embeddings.back().im_sign));
        else if (is_mykkeltveit_member(emb, x))
            fail("vertex is in the Mykkeltveit set");
    }
    return path;
}

class long_path_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The validated path; throws long_path_error naming the first offending step.
inline LongPath build_long_path(unsigned sigma, unsigned w) {
    require(w % 2 == 1 || w >= 16, "even-w construction needs w >= 16");
    auto path = trace_long_path(sigma, w);
    if (!path.validation.ok)
        throw long_path_error("long path for w=" + std::to_string(w) + " fails at step " +
                              std::to_string(*path.validation.first_bad_step) + ": " + path.validation.reason);
    return path;
}

}  // namespace uhs
