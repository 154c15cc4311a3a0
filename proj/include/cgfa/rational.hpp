#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cgfa {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Parses "3", "1.5" or "3/2" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in rational literal");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(BigInt(digits), den);
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

/// Nonnegative rational extended with +infinity, used for rate bounds.
struct ExtRat {
    bool infinite = false;
    Rational value;  // meaningful iff !infinite

    static ExtRat inf() { return ExtRat{true, Rational(0)}; }
    static ExtRat of(Rational v) { return ExtRat{false, std::move(v)}; }

    friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
        if (a.infinite || b.infinite) return inf();
        return of(a.value + b.value);
    }
    friend ExtRat operator*(const ExtRat& a, const ExtRat& b) {
        if (a.infinite || b.infinite) {
            // only reached with nonnegative operands; 0 * inf = 0
            if ((!a.infinite && a.value == 0) || (!b.infinite && b.value == 0))
                return of(Rational(0));
            return inf();
        }
        return of(a.value * b.value);
    }
    bool is_zero() const { return !infinite && value == 0; }
    bool operator==(const ExtRat& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

}  // namespace cgfa
