#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ducba {

// Exact rational threshold. Support/confidence cutoffs like 0.02 are not
// representable in binary floating point, so threshold comparisons against
// integer counts are done with cross-multiplication instead.
struct Fraction {
    int64_t num = 0;
    int64_t den = 1;

    Fraction() = default;
    Fraction(int64_t n, int64_t d) : num(n), den(d) {
        if (den <= 0) throw std::invalid_argument("fraction denominator must be positive");
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    // count/total >= num/den, all exact.
    bool leq_ratio(int64_t count, int64_t total) const {
        return static_cast<__int128>(count) * den >= static_cast<__int128>(num) * total;
    }
};

// Parses a decimal like "0.02", "1", ".5", "2.5e-3" into an exact fraction.
inline Fraction fraction_from_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty decimal");
    int exponent = 0;
    size_t e = text.find_first_of("eE");
    if (e != std::string_view::npos) {
        exponent = std::stoi(std::string(text.substr(e + 1)));
        text = text.substr(0, e);
    }
    size_t dot = text.find('.');
    std::string digits;
    int64_t den = 1;
    if (dot == std::string_view::npos) {
        digits = std::string(text);
    } else {
        digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
        for (size_t i = dot + 1; i < text.size(); ++i) {
            if (den > (INT64_MAX / 10)) throw std::invalid_argument("decimal too long");
            den *= 10;
        }
    }
    if (digits.empty() || digits == "-") throw std::invalid_argument("malformed decimal");
    size_t pos = 0;
    bool neg = false;
    if (digits[0] == '-' || digits[0] == '+') { neg = digits[0] == '-'; pos = 1; }
    int64_t num = 0;
    for (; pos < digits.size(); ++pos) {
        char c = digits[pos];
        if (c < '0' || c > '9') throw std::invalid_argument("malformed decimal: " + std::string(text));
        if (num > (INT64_MAX - 9) / 10) throw std::invalid_argument("decimal too large");
        num = num * 10 + (c - '0');
    }
    for (; exponent > 0; --exponent) {
        if (num > INT64_MAX / 10) throw std::invalid_argument("decimal too large");
        num *= 10;
    }
    for (; exponent < 0; ++exponent) {
        if (den > INT64_MAX / 10) throw std::invalid_argument("decimal too long");
        den *= 10;
    }
    return Fraction(neg ? -num : num, den);
}

// Exact fraction for a double via its shortest round-trip decimal form.
Fraction fraction_from_double(double v);

}  // namespace ducba
