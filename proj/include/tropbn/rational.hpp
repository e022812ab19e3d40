#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tropbn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Floor of a/b for b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

inline Int rat_floor(const Rat& x) {
    return floor_div(numerator(x), denominator(x));
}

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

// Representative of x modulo period, normalized into [0, period). period > 0.
inline Rat mod_period(const Rat& x, const Rat& period) {
    if (period <= 0) {
        throw std::invalid_argument("mod_period: period must be positive");
    }
    Rat r = x - Rat(rat_floor(x / period)) * period;
    // Guard against r == period from any upstream normalization slip.
    if (r >= period) {
        r -= period;
    }
    return r;
}

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int int_lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = int_gcd(a, b);
    Int l = (a / g) * b;
    return l < 0 ? -l : l;
}

// Parses "p", "-p", "p/q" or "-p/q" (q > 0 after normalization).
inline Rat parse_rational(const std::string& s) {
    const auto bad = [&] {
        return std::invalid_argument("not a rational literal: '" + s + "'");
    };
    if (s.empty()) throw bad();
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        if (slash == 0 || slash + 1 == s.size()) throw bad();
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        // cpp_int rejects malformed digit strings with runtime_error.
        throw bad();
    }
}

// Lowest-terms "p/q" form; integers render as "p/1".
inline std::string rational_string(const Rat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace tropbn
