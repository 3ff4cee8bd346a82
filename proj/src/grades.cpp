#include "grades.hpp"

#include <algorithm>
#include <cstddef>

namespace mpc {

std::string GradeScale::render_x(index_t rank) const {
    if (rank >= 0 && static_cast<std::size_t>(rank) < x_tokens.size() && !x_tokens[rank].empty())
        return x_tokens[rank];
    return std::to_string(rank);
}

std::string GradeScale::render_y(index_t rank) const {
    if (rank >= 0 && static_cast<std::size_t>(rank) < y_tokens.size() && !y_tokens[rank].empty())
        return y_tokens[rank];
    return std::to_string(rank);
}

bool DecimalValue::parse(const std::string& token, DecimalValue& out) {
    out = DecimalValue{};
    std::size_t i = 0;
    const std::size_t n = token.size();
    if (i < n && (token[i] == '+' || token[i] == '-')) {
        out.negative = token[i] == '-';
        ++i;
    }
    std::string digits;
    long long point_shift = 0;  // digits after the decimal point
    bool any_digit = false;
    while (i < n && token[i] >= '0' && token[i] <= '9') {
        digits.push_back(token[i]);
        any_digit = true;
        ++i;
    }
    if (i < n && token[i] == '.') {
        ++i;
        while (i < n && token[i] >= '0' && token[i] <= '9') {
            digits.push_back(token[i]);
            ++point_shift;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit) return false;
    long long exp10 = 0;
    if (i < n && (token[i] == 'e' || token[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < n && (token[i] == '+' || token[i] == '-')) {
            exp_neg = token[i] == '-';
            ++i;
        }
        if (i == n) return false;
        long long v = 0;
        while (i < n && token[i] >= '0' && token[i] <= '9') {
            v = v * 10 + (token[i] - '0');
            if (v > 1'000'000'000LL) return false;
            ++i;
        }
        exp10 = exp_neg ? -v : v;
    }
    if (i != n) return false;

    // Normalize to 0.digits * 10^exponent with a zero-free mantissa boundary.
    std::size_t first = 0;
    while (first < digits.size() && digits[first] == '0') ++first;
    std::size_t last = digits.size();
    while (last > first && digits[last - 1] == '0') --last;
    if (first == last) {
        out.exponent = 0;
        out.digits.clear();
        out.negative = false;
        return true;
    }
    out.exponent = static_cast<long long>(digits.size()) - point_shift + exp10 -
                   static_cast<long long>(first);
    out.digits = digits.substr(first, last - first);
    return true;
}

int compare(const DecimalValue& a, const DecimalValue& b) {
    if (a.is_zero() && b.is_zero()) return 0;
    if (a.is_zero()) return b.negative ? 1 : -1;
    if (b.is_zero()) return a.negative ? -1 : 1;
    if (a.negative != b.negative) return a.negative ? -1 : 1;
    const int sign = a.negative ? -1 : 1;
    if (a.exponent != b.exponent) return a.exponent < b.exponent ? -sign : sign;
    const int digit_cmp = a.digits.compare(b.digits);
    if (digit_cmp != 0) return digit_cmp < 0 ? -sign : sign;
    return 0;
}

}  // namespace mpc
