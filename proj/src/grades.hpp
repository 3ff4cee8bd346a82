#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mpc {

using index_t = std::int32_t;

// Bigrade in rank space. Coordinates are ranks into the owning complex's
// value scale, so they are dense and start at 0.
struct Grade {
    index_t x = 0;
    index_t y = 0;

    friend bool operator==(const Grade&, const Grade&) = default;
};

// Product partial order on bigrades.
inline bool leq(Grade a, Grade b) { return a.x <= b.x && a.y <= b.y; }

// Colexicographic order: y first, then x. Total, and refines leq.
inline bool colex_less(Grade a, Grade b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }

// Lexicographic order: x first, then y. Grid sweeps run in this order.
inline bool lex_less(Grade a, Grade b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

// Grade text exactly as it appeared in an input file. Empty for generators
// synthesized in memory.
struct TokenPair {
    std::string x;
    std::string y;

    bool present() const { return !x.empty() || !y.empty(); }
    friend bool operator==(const TokenPair&, const TokenPair&) = default;
};

// One representative token per rank and axis. Used to render grades of
// generators that carry no token of their own (kernel elements, presentation
// rows and columns). Empty tables fall back to printing the rank itself.
struct GradeScale {
    std::vector<std::string> x_tokens;
    std::vector<std::string> y_tokens;

    std::string render_x(index_t rank) const;
    std::string render_y(index_t rank) const;

    friend bool operator==(const GradeScale&, const GradeScale&) = default;
};

// Exact decimal value of a grade token. Comparison happens on the normalized
// form (sign, exponent, mantissa digits), so arbitrarily long mantissas
// compare without rounding. Value is sign * 0.digits * 10^exponent.
struct DecimalValue {
    bool negative = false;
    long long exponent = 0;
    std::string digits;  // no leading or trailing zeros; empty means zero

    bool is_zero() const { return digits.empty(); }

    // Accepts [+-]? digits [. digits] [eE [+-] digits]; returns false on
    // malformed input.
    static bool parse(const std::string& token, DecimalValue& out);
};

int compare(const DecimalValue& a, const DecimalValue& b);

}  // namespace mpc
