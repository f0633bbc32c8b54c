#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace spv {

// Exact arithmetic substrate. cpp_rational keeps values reduced with a
// positive denominator, so structural equality is value equality.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline Int ipow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat rat_inv(const Rat& x) {
    if (x == 0) throw MathError("rat_inv: inversion of zero");
    return Rat(1) / x;
}

// x^e for integer e of either sign (x != 0 when e < 0).
inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) return rat_inv(rat_pow(x, -e));
    Rat r = 1, b = x;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline std::string rat_str(const Rat& x) {
    if (rat_den(x) == 1) return rat_num(x).str();
    return rat_num(x).str() + "/" + rat_den(x).str();
}

} // namespace spv
