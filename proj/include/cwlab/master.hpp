#pragma once

// Truncated evaluators for the master-theorem series: the basic generating
// identity sum_p t^p char_p(X) = det(I-tX)^{-1}, its lambda-extended form for
// 2x2 matrices, and the general-N extension with exact nested coefficients.
// All combinatorial weights stay in big-integer/rational arithmetic until the
// final conversion of each series term.

#include <map>
#include <utility>
#include <vector>

#include "cwlab/exact.hpp"
#include "cwlab/matrix.hpp"
#include "cwlab/solidharm.hpp"
#include "cwlab/wigner.hpp"

namespace cwlab {

// Caps the total homogeneity degree (power of t) of included terms.
struct Truncation {
    int degree_max = 0;
};

// Parts (sigma_2, ..., sigma_N); weighted degree is sum_k k*sigma_k.
using SigmaIndex = std::vector<int>;

inline bool convergence_ok(const ComplexMatrix& x) {
    if (x.dim() != 2) throw std::invalid_argument("convergence_ok: X must be 2x2");
    return std::abs(x(0, 0)) < 1.0 && std::abs(x(1, 1)) < 1.0 &&
           std::abs(x(0, 1) * x(1, 0)) < 1.0 && std::abs(x.det()) < 1.0;
}

namespace detail {

inline void require_truncation(Truncation trunc, const char* what) {
    if (trunc.degree_max < 0)
        throw std::invalid_argument(std::string(what) + ": negative degree_max");
}

inline cplx degree_character(int n, int p, const ComplexMatrix& x) {
    if (n == 2) return wigner_character(HalfInt::from_twice(p), x);
    return solid_character(n, p, x);
}

inline std::vector<cplx> power_table(cplx base, int top) {
    std::vector<cplx> pw(static_cast<size_t>(top) + 1);
    pw[0] = 1.0;
    for (int e = 1; e <= top; ++e) pw[e] = pw[e - 1] * base;
    return pw;
}

}  // namespace detail

inline cplx smt_lhs(const ComplexMatrix& x, cplx t, Truncation trunc) {
    detail::require_truncation(trunc, "smt_lhs");
    const int n = x.dim();
    auto tpow = detail::power_table(t, trunc.degree_max);
    cplx total = 0.0;
    for (int p = 0; p <= trunc.degree_max; ++p)
        total += tpow[p] * detail::degree_character(n, p, x);
    return total;
}

inline cplx extended_smt_lhs_n2(const ComplexMatrix& x, cplx t, int lambda, Truncation trunc) {
    if (lambda < 2) throw std::invalid_argument("extended_smt_lhs_n2: lambda < 2");
    if (x.dim() != 2) throw std::invalid_argument("extended_smt_lhs_n2: X must be 2x2");
    detail::require_truncation(trunc, "extended_smt_lhs_n2");
    const int deg = trunc.degree_max;
    auto tpow = detail::power_table(t, deg);
    auto dpow = detail::power_table(x.det(), deg / 2);
    cplx total = 0.0;
    for (int tj = 0; tj <= deg; ++tj) {
        const cplx chi = wigner_character(HalfInt::from_twice(tj), x);
        for (int m = 0; tj + 2 * m <= deg; ++m) {
            const bigint num = bigint(tj + 1) * binomial(m + lambda - 2, lambda - 2) *
                               binomial(m + tj + lambda - 1, lambda - 2);
            total += to_double(bigrat(num, lambda - 1)) * tpow[tj + 2 * m] * dpow[m] * chi;
        }
    }
    return total;
}

// Nested-sum coefficient of the general-N extension in exact arithmetic.
// Integer for N = 2 and for lambda <= 3, but genuinely rational beyond
// (first at N=3, lambda=4, sigma=(0,2), value 183/2); both the nested sum
// and the closed forms agree on these, and the series identity holds.
inline bigrat msmt_coefficient(int n, int lambda, int p, const SigmaIndex& sigma) {
    if (n < 2) throw std::invalid_argument("msmt_coefficient: N < 2");
    if (lambda < 2) throw std::invalid_argument("msmt_coefficient: lambda < 2");
    if (p < 0) throw std::invalid_argument("msmt_coefficient: p < 0");
    if (static_cast<int>(sigma.size()) != n - 1)
        throw std::invalid_argument("msmt_coefficient: sigma must have N-1 parts");
    for (int v : sigma)
        if (v < 0) throw std::invalid_argument("msmt_coefficient: negative sigma part");

    const int levels = lambda - 2;  // one inner multi-index per applied step
    bigint total = 0;
    std::vector<int> rem(sigma);
    auto level = [&](auto&& self, int k, int wsum, const bigint& prod) -> void {
        if (k == levels) {
            total += prod * multinomial(rem);
            return;
        }
        std::vector<int> g(sigma.size(), 0);  // this level's multi-index
        auto enumerate = [&](auto&& eself, size_t idx) -> void {
            if (idx == g.size()) {
                int wg = 0;
                for (size_t j = 0; j < g.size(); ++j) wg += (static_cast<int>(j) + 2) * g[j];
                for (size_t j = 0; j < g.size(); ++j) rem[j] -= g[j];
                const bigint f = prod * multinomial(g) * bigint(p + k + 2 + wsum + wg);
                self(self, k + 1, wsum + wg, f);
                for (size_t j = 0; j < g.size(); ++j) rem[j] += g[j];
                return;
            }
            for (int v = 0; v <= rem[idx]; ++v) {
                g[idx] = v;
                eself(eself, idx + 1);
            }
            g[idx] = 0;
        };
        enumerate(enumerate, 0);
    };
    level(level, 0, 0, bigint(1));

    if (total < 0) throw std::logic_error("msmt_coefficient: negative value");
    return bigrat(total, factorial(lambda - 2));
}

inline cplx msmt_lhs(int n, const ComplexMatrix& x, cplx t, int lambda, Truncation trunc) {
    if (lambda < 2) throw std::invalid_argument("msmt_lhs: lambda < 2");
    if (x.dim() != n) throw std::invalid_argument("msmt_lhs: dimension mismatch");
    if (n < 2) throw std::invalid_argument("msmt_lhs: N < 2");
    detail::require_truncation(trunc, "msmt_lhs");
    const int deg = trunc.degree_max;

    const auto minors = principal_minor_sums(x);
    std::vector<cplx> that(static_cast<size_t>(n) + 1, 0.0);
    for (int q = 2; q <= n; ++q) {
        const double sgn = (q % 2 == 0) ? 1.0 : -1.0;
        that[q] = sgn * static_cast<double>(q - 1) * minors[q];
    }
    auto tpow = detail::power_table(t, deg);

    std::map<std::pair<int, SigmaIndex>, double> coeff_cache;
    auto coeff = [&](int p, const SigmaIndex& sigma) {
        auto key = std::make_pair(p, sigma);
        auto it = coeff_cache.find(key);
        if (it != coeff_cache.end()) return it->second;
        double c = to_double(bigrat(p + 1, lambda - 1) * msmt_coefficient(n, lambda, p, sigma));
        coeff_cache.emplace(std::move(key), c);
        return c;
    };

    cplx total = 0.0;
    SigmaIndex sigma(static_cast<size_t>(n - 1), 0);
    for (int p = 0; p <= deg; ++p) {
        const cplx chi = detail::degree_character(n, p, x);
        auto rec = [&](auto&& self, int part, int wleft, cplx tprod) -> void {
            if (part == n - 1) {
                const int w = deg - p - wleft;
                total += coeff(p, sigma) * tpow[p + w] * tprod * chi;
                return;
            }
            const int k = part + 2;  // minor size this part multiplies
            cplx f = 1.0;
            for (int v = 0; k * v <= wleft; ++v) {
                sigma[part] = v;
                self(self, part + 1, wleft - k * v, tprod * f);
                f *= that[k];
            }
            sigma[part] = 0;
        };
        rec(rec, 0, deg - p, cplx(1.0));
    }
    return total;
}

// Both sides of the partial-sum identity behind the induction step:
// F(n) = (1/(lambda-1)) sum_{m<=n} C(m+l-2,l-2) C(m+p+l-1,l-2) (l+p+2m),
// G(n) = C(n+l-1,l-1) C(n+p+l,l-1).
inline std::pair<bigrat, bigrat> binomial_identity(int lambda, int p, int n) {
    if (lambda < 2) throw std::invalid_argument("binomial_identity: lambda < 2");
    if (p < 0 || n < 0) throw std::invalid_argument("binomial_identity: negative index");
    bigint fsum = 0;
    for (int m = 0; m <= n; ++m)
        fsum += binomial(m + lambda - 2, lambda - 2) * binomial(m + p + lambda - 1, lambda - 2) *
                bigint(lambda + p + 2 * m);
    bigrat f(fsum, lambda - 1);
    bigrat g(binomial(n + lambda - 1, lambda - 1) * binomial(n + p + lambda, lambda - 1));
    return {f, g};
}

}  // namespace cwlab
