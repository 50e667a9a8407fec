#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sunflower {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned exponent)
{
    return boost::multiprecision::pow(base, exponent);
}

/// base^exponent for any integer exponent; base must be non-zero when exponent < 0.
inline Rational rpow(const Rational& base, int exponent)
{
    const unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    Rational num(ipow(BigInt(numerator(base)), e));
    Rational den(ipow(BigInt(denominator(base)), e));
    if (exponent >= 0) return num / den;
    if (num == 0) throw std::domain_error("zero raised to a negative power");
    return den / num;
}

/// Parses "a/b", an integer, or a decimal such as "-1.25" exactly (no binary floating point).
inline Rational parse_rational(std::string_view text)
{
    auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
    auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
        if (s.empty()) fail();
        bool negative = false;
        if (allow_sign && (s.front() == '-' || s.front() == '+')) {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) fail();
        BigInt v = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) fail();
            v = v * 10 + (c - '0');
        }
        return negative ? BigInt(-v) : v;
    };

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_int(text.substr(0, slash), true);
        const BigInt den = parse_int(text.substr(slash + 1), false);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        const std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
        if (whole.empty() && frac.empty()) fail();
        const BigInt w = whole.empty() ? BigInt(0) : parse_int(whole, false);
        const BigInt f = frac.empty() ? BigInt(0) : parse_int(frac, false);
        const BigInt scale = ipow(BigInt(10), static_cast<unsigned>(frac.size()));
        Rational value(BigInt(w * scale + f), scale);
        return negative ? Rational(-value) : value;
    }
    return Rational(parse_int(text, true));
}

/// "a/b", or "a" when the denominator is 1.
inline std::string to_string(const Rational& q)
{
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace detail {

inline bool is_power_of_two(const BigInt& v)
{
    return v > 0 && (v & (v - 1)) == 0;
}

inline int exact_log2(const BigInt& v)
{
    return static_cast<int>(boost::multiprecision::msb(v));
}

}  // namespace detail

/// Smallest multiple of 2^-frac_bits that is >= coefficient * log2(x); exact when x is a power of two.
/// Requires x > 0 and coefficient > 0.
inline Rational scaled_log2_upper(const Rational& coefficient, const Rational& x, unsigned frac_bits = 20)
{
    if (x <= 0) throw std::domain_error("logarithm of a non-positive number");
    if (coefficient <= 0) throw std::domain_error("log coefficient must be positive");
    const BigInt num(numerator(x));
    const BigInt den(denominator(x));
    if (detail::is_power_of_two(num) && detail::is_power_of_two(den))
        return coefficient * Rational(detail::exact_log2(num) - detail::exact_log2(den));

    // log2(x) is irrational here, so the scaled product is never an integer and 100 digits settle the ceiling.
    using Float = boost::multiprecision::cpp_bin_float_100;
    const Float lg = (log(Float(num)) - log(Float(den))) / log(Float(2));
    const Float c = Float(BigInt(numerator(coefficient))) / Float(BigInt(denominator(coefficient)));
    const Float scaled = ceil(c * lg * Float(ipow(BigInt(2), frac_bits)));
    return Rational(scaled.convert_to<BigInt>(), ipow(BigInt(2), frac_bits));
}

}  // namespace sunflower
