#include "mixscan/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace mixscan {

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw Error(Errc::BadParams, "empty rational");

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = (s[pos] == '-');
        ++pos;
    }

    std::int64_t num = 0;
    std::int64_t den = 1;
    bool any_digit = false;
    bool seen_dot = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (seen_dot) throw Error(Errc::BadParams, "bad rational '" + text + "'");
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error(Errc::BadParams, "bad rational '" + text + "'");
        if (num > (INT64_MAX - 9) / 10 || den > INT64_MAX / 10)
            throw Error(Errc::BadParams, "rational out of range '" + text + "'");
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        any_digit = true;
    }
    if (!any_digit) throw Error(Errc::BadParams, "bad rational '" + text + "'");
    if (negative) num = -num;
    return Rational(num, den);
}

Rational median(std::vector<Rational> values) {
    if (values.empty()) throw Error(Errc::ChainTooShort, "median of empty list");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2;
}

}  // namespace mixscan
