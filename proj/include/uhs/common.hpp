#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uhs {

/// Integer code of a k-mer: base-sigma digits, symbol 0 most significant.
using code_t = unsigned __int128;
using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

/// Raised when a computation would exceed the configured node budget.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default cap on the number of de Bruijn nodes any exhaustive routine touches.
inline constexpr std::uint64_t kDefaultMaxNodes = std::uint64_t{1} << 28;

struct Budget {
    std::uint64_t max_nodes = kDefaultMaxNodes;
};

inline std::string to_string(code_t v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return out;
}

/// sigma^n in 128-bit arithmetic. Throws std::overflow_error rather than wrapping.
inline code_t checked_pow(unsigned sigma, unsigned n) {
    code_t r = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (r > std::numeric_limits<code_t>::max() / sigma)
            throw std::overflow_error("sigma^" + std::to_string(n) + " does not fit in 128 bits");
        r *= sigma;
    }
    return r;
}

/// sigma^n as a node count, rejected when above the budget.
inline std::uint64_t node_count(unsigned sigma, unsigned n, const Budget& budget, const char* what = "graph") {
    code_t total;
    try {
        total = checked_pow(sigma, n);
    } catch (const std::overflow_error&) {
        throw budget_error(std::string(what) + ": sigma^" + std::to_string(n) + " overflows");
    }
    if (total > budget.max_nodes)
        throw budget_error(std::string(what) + ": " + std::to_string(sigma) + "^" + std::to_string(n) + " = " +
                           to_string(total) + " nodes exceeds budget of " + std::to_string(budget.max_nodes));
    return static_cast<std::uint64_t>(total);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace uhs
