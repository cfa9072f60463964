#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace kalman {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& x) { return x.str(); }

// Binomial coefficient by the multiplicative formula; zero outside 0 <= b <= a.
inline BigInt binomial(long a, long b) {
    if (a < 0 || b < 0 || b > a)
        return 0;
    if (b > a - b)
        b = a - b;
    BigInt r = 1;
    for (long i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

inline BigInt ipow(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

// Exact quotient; throws if b does not divide a.
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    if (b == 0)
        throw ArithmeticError("division by zero");
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0)
        throw ArithmeticError("inexact integer division " + a.str() + " / " + b.str());
    return q;
}

} // namespace kalman
