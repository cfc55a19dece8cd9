#pragma once

#include <boost/rational.hpp>

#include <cctype>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "tmt/error.hpp"

namespace tmt {

/// Exact cost arithmetic. Totals must reconcile by equality, never by tolerance.
using Rational = boost::rational<std::int64_t>;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

inline std::int64_t parse_i64(std::string_view s) {
    std::int64_t v = 0;
    for (char c : s) {
        if (v > (INT64_MAX - 9) / 10)
            throw Error(ErrorCode::InvalidConfig, "number too large: " + std::string(s));
        v = v * 10 + (c - '0');
    }
    return v;
}

} // namespace detail

/// Parses "3", "0.25" or "1/3" into an exact rational. Exponent notation is rejected.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto fail = [&] {
        return Error(ErrorCode::InvalidConfig, "not a rational number: '" + std::string(text) + "'");
    };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den))
            throw fail();
        auto d = detail::parse_i64(den);
        if (d == 0)
            throw fail();
        value = Rational(detail::parse_i64(num), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac) || frac.size() > 18)
            throw fail();
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        std::int64_t w = whole.empty() ? 0 : detail::parse_i64(whole);
        if (w > INT64_MAX / scale)
            throw fail();
        value = Rational(w * scale + detail::parse_i64(frac), scale);
    } else {
        if (!detail::all_digits(s))
            throw fail();
        value = Rational(detail::parse_i64(s));
    }
    return negative ? -value : value;
}

inline double to_double(const Rational& r) {
    return boost::rational_cast<double>(r);
}

/// Exact decimal expansion when the denominator is 2^a 5^b, otherwise 12 significant digits.
inline std::string format_rational(const Rational& r) {
    std::int64_t den = r.denominator();
    int twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    int digits = std::max(twos, fives);

    if (den == 1 && digits <= 18) {
        std::int64_t scale = 1;
        for (int i = 0; i < digits; ++i)
            scale *= 10;
        std::int64_t factor = scale / r.denominator();
        std::int64_t num = r.numerator();
        bool negative = num < 0;
        std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(num + 1)) + 1 : static_cast<std::uint64_t>(num);
        if (mag <= UINT64_MAX / static_cast<std::uint64_t>(factor)) {
            std::uint64_t scaled = mag * static_cast<std::uint64_t>(factor);
            auto s = scale;
            std::string out = negative ? "-" : "";
            out += std::to_string(scaled / static_cast<std::uint64_t>(s));
            if (digits > 0) {
                std::string frac = std::to_string(scaled % static_cast<std::uint64_t>(s));
                out += '.';
                out += std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
            }
            return out;
        }
    }
    std::ostringstream os;
    os << std::setprecision(12) << to_double(r);
    return os.str();
}

} // namespace tmt
