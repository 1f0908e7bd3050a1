#pragma once

// Exact integer / rational combinatorics. Everything here is computed without
// rounding; callers convert to binary64 once, at the end.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cwlab {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

inline double to_double(const bigint& v) { return v.convert_to<double>(); }
inline double to_double(const bigrat& v) { return v.convert_to<double>(); }

// z^n for integer n >= 0 with the convention z^0 = 1 (also for z = 0).
template <class T>
T ipow(T z, int n) {
    if (n < 0) throw std::invalid_argument("ipow: negative exponent");
    T r{1};
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

inline bigint factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    bigint r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// n! fits uint64 exactly for n <= 20.
inline std::uint64_t factorial_u64(int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("factorial_u64: out of range");
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

inline bigint binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    bigint r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;  // exact at every step
    }
    return r;
}

// Pascal table, exact in uint64 for n <= 62 (C(62,31) < 2^63).
inline std::uint64_t binomial_u64(int n, int k) {
    static const auto table = [] {
        auto t = std::make_unique<std::array<std::array<std::uint64_t, 63>, 63>>();
        for (int i = 0; i < 63; ++i) {
            (*t)[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                (*t)[i][j] = (*t)[i - 1][j - 1] + (j <= i - 1 ? (*t)[i - 1][j] : 0);
            for (int j = i + 1; j < 63; ++j) (*t)[i][j] = 0;
        }
        return t;
    }();
    if (k < 0 || k > n || n < 0) return 0;
    if (n > 62) throw std::invalid_argument("binomial_u64: n > 62");
    return (*table)[n][k];
}

// Exact value converted once to double (not exactly representable above 2^53,
// but correctly rounded).
inline double binomial_d(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0.0;
    if (n <= 62) return static_cast<double>(binomial_u64(n, k));
    return to_double(binomial(n, k));
}

// (sum parts)! / prod parts!  via a product of binomials, exact.
inline bigint multinomial(const std::vector<int>& parts) {
    int total = 0;
    bigint r = 1;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        total += p;
        r *= binomial(total, p);
    }
    return r;
}

// Generalized binomial C(top, m) = top (top-1) ... (top-m+1) / m! with a
// possibly non-integer rational top argument.
inline bigrat gen_binomial(const bigrat& top, int m) {
    if (m < 0) return 0;
    bigrat r = 1;
    for (int i = 0; i < m; ++i) r *= (top - i);
    return r / bigrat(factorial(m));
}

}  // namespace cwlab
