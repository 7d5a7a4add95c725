#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tvbf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// floor division / remainder (remainder always in [0, |n|))
inline Integer floor_div(const Integer& a, const Integer& n) {
    if (n == 0) throw std::domain_error("floor_div by zero");
    Integer q = a / n, r = a % n;
    if (r != 0 && ((r < 0) != (n < 0))) --q;
    return q;
}

inline Integer mod_floor(const Integer& a, const Integer& n) {
    return a - floor_div(a, n) * n;
}

// fractional part of q in [0, 1)
inline Rational mod_one(const Rational& q) {
    Integer num = numerator(q), den = denominator(q);
    return Rational(mod_floor(num, den), den);
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::int64_t to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
    return x.convert_to<std::int64_t>();
}

} // namespace tvbf
