#pragma once

// Wigner D-matrices of arbitrary complex 2x2 arguments. Half-integer labels
// are carried as doubled integers everywhere; polynomials of homogeneity
// degree 2j in the entries. Coefficients are exact integers/ratios promoted
// to binary64 once per term, which keeps the k-sum cancellation-free up to
// j ~ 20 and beyond.

#include <algorithm>
#include <compare>
#include <vector>

#include "cwlab/exact.hpp"
#include "cwlab/matrix.hpp"

namespace cwlab {

// Value j represented by twice = 2j. Negative allowed (projection labels q).
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
    static constexpr HalfInt whole(int n) { return HalfInt{2 * n}; }

    double value() const { return 0.5 * twice; }
    bool is_whole() const { return (twice & 1) == 0; }
    friend constexpr auto operator<=>(const HalfInt&, const HalfInt&) = default;

  private:
    explicit constexpr HalfInt(int t) : twice(t) {}
};

inline void require_projection(HalfInt j, HalfInt q, const char* what) {
    if (j.twice < 0) throw std::invalid_argument(std::string(what) + ": j < 0");
    if (std::abs(q.twice) > j.twice) throw std::invalid_argument(std::string(what) + ": |q| > j");
    if (((j.twice ^ q.twice) & 1) != 0)
        throw std::invalid_argument(std::string(what) + ": q not in j + Z");
}

namespace detail {

// a1!a2!/(b1!b2!) with a1+a2 = b1+b2 = 2j, as C(2j,b1)/C(2j,a1), exact.
inline double wigner_prefactor(int two_j, int a1, int b1) {
    if (two_j <= 62)
        return std::sqrt(static_cast<double>(binomial_u64(two_j, b1)) /
                         static_cast<double>(binomial_u64(two_j, a1)));
    return std::sqrt(to_double(bigrat(binomial(two_j, b1)) / bigrat(binomial(two_j, a1))));
}

inline double wigner_coeff(int b1, int b2, int k, int s) {
    if (b1 <= 62 && b2 <= 62)
        return static_cast<double>(binomial_u64(b1, k)) * static_cast<double>(binomial_u64(b2, k - s));
    return to_double(binomial(b1, k) * binomial(b2, k - s));
}

struct Pows {
    std::vector<cplx> p11, p12, p21, p22;
    // powers 0..deg of each entry of X
    Pows(const ComplexMatrix& x, int deg)
        : p11(deg + 1), p12(deg + 1), p21(deg + 1), p22(deg + 1) {
        p11[0] = p12[0] = p21[0] = p22[0] = 1.0;
        for (int e = 1; e <= deg; ++e) {
            p11[e] = p11[e - 1] * x(0, 0);
            p12[e] = p12[e - 1] * x(0, 1);
            p21[e] = p21[e - 1] * x(1, 0);
            p22[e] = p22[e - 1] * x(1, 1);
        }
    }
};

// D^j_{q1,q2} with powers already tabulated; integer arguments a1 = j+q1 etc.
inline cplx wigner_core(int two_j, int two_q1, int two_q2, const Pows& p) {
    const int a1 = (two_j + two_q1) / 2;
    const int b1 = (two_j + two_q2) / 2;
    const int b2 = (two_j - two_q2) / 2;
    const int s = (two_q1 + two_q2) / 2;
    const int klo = std::max(0, s);
    const int khi = std::min(a1, b1);
    cplx sum = 0.0;
    for (int k = klo; k <= khi; ++k)
        sum += wigner_coeff(b1, b2, k, s) * p.p11[k] * p.p12[a1 - k] * p.p21[b1 - k] * p.p22[k - s];
    return wigner_prefactor(two_j, a1, b1) * sum;
}

}  // namespace detail

inline cplx wigner_d(HalfInt j, HalfInt q1, HalfInt q2, const ComplexMatrix& x) {
    require_projection(j, q1, "wigner_d");
    require_projection(j, q2, "wigner_d");
    if (x.dim() != 2) throw std::invalid_argument("wigner_d: X must be 2x2");
    detail::Pows p(x, j.twice);
    return detail::wigner_core(j.twice, q1.twice, q2.twice, p);
}

// (2j+1)x(2j+1) block, entry (a,b) = D^j_{j-a, j-b} (projections descending).
inline ComplexMatrix wigner_block(HalfInt j, const ComplexMatrix& x) {
    if (j.twice < 0) throw std::invalid_argument("wigner_block: j < 0");
    if (x.dim() != 2) throw std::invalid_argument("wigner_block: X must be 2x2");
    const int dim = j.twice + 1;
    detail::Pows p(x, j.twice);
    ComplexMatrix r(dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            r(a, b) = detail::wigner_core(j.twice, j.twice - 2 * a, j.twice - 2 * b, p);
    return r;
}

// Trace of wigner_block: sum over the diagonal projections only.
inline cplx wigner_character(HalfInt j, const ComplexMatrix& x) {
    if (j.twice < 0) throw std::invalid_argument("wigner_character: j < 0");
    if (x.dim() != 2) throw std::invalid_argument("wigner_character: X must be 2x2");
    detail::Pows p(x, j.twice);
    cplx sum = 0.0;
    for (int tq = -j.twice; tq <= j.twice; tq += 2)
        sum += detail::wigner_core(j.twice, tq, tq, p);
    return sum;
}

}  // namespace cwlab
