#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mixscan/errors.hpp"

namespace mixscan {

// Exact rational with cross-multiplied comparison. Thresholds like the
// output-amount ratio and the chain time-median bounds sit exactly on
// decision boundaries, so they are never run through floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // always > 0

    constexpr Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error(Errc::BadParams, "rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational operator+(const Rational& o) const {
        return Rational(num * o.den + o.num * den, den * o.den);
    }
    Rational operator/(std::int64_t k) const { return Rational(num, den * k); }
};

// Parses "5", "4.5", "19.9" into an exact rational. Used for threshold keys
// in params files.
Rational parse_rational(const std::string& text);

// Median of the list; even-length lists use the mean of the two central
// values. Throws ChainTooShort on an empty list.
Rational median(std::vector<Rational> values);

}  // namespace mixscan
