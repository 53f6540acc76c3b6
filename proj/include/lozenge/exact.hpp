#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace lozenge {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline std::string to_string(const Rational& r)
{
    return r.str();
}

inline std::string to_string(const BigInt& z)
{
    return z.str();
}

inline Rational parse_rational(const std::string& text)
{
    return Rational(text);
}

inline double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

inline double to_double(double v)
{
    return v;
}

// (y)_m = y (y+1) ... (y+m-1), a literal product so that nonpositive y may give 0
inline BigInt rising(long y, long m)
{
    BigInt r = 1;
    for (long i = 0; i < m; ++i) {
        if (y + i == 0)
            return 0;
        r *= y + i;
    }
    return r;
}

inline BigInt factorial(long n)
{
    BigInt r = 1;
    for (long i = 2; i <= n; ++i)
        r *= i;
    return r;
}

// row L of Pascal's triangle
inline std::vector<BigInt> binomial_row(long L)
{
    std::vector<BigInt> row(static_cast<std::size_t>(L + 1));
    row[0] = 1;
    for (long s = 1; s <= L; ++s)
        row[s] = row[s - 1] * (L - s + 1) / s;
    return row;
}

template <class T>
T ipow(const T& base, long e)
{
    if (e < 0)
        return T(1) / ipow(base, -e);
    T result(1);
    T b(base);
    while (e > 0) {
        if (e & 1)
            result *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return result;
}

}  // namespace lozenge
