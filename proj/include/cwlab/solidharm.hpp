#pragma once

// Polynomial matrix elements of GL(N) symmetric-power representations,
// labeled by weak compositions of the degree p into N parts. Entries are
// sqrt(alpha! beta!) * sum over nonnegative integer NxN matrices A with row
// sums alpha and column sums beta of X^A / A!. For N = 2 these reduce to the
// Wigner D polynomials with j = p/2, q = (alpha_1 - alpha_2)/2.

#include <vector>

#include "cwlab/exact.hpp"
#include "cwlab/matrix.hpp"

namespace cwlab {

using Composition = std::vector<int>;

// Weak compositions of total into n_parts parts, first part descending.
inline std::vector<Composition> compositions(int n_parts, int total) {
    if (n_parts < 1) throw std::invalid_argument("compositions: need at least one part");
    if (total < 0) throw std::invalid_argument("compositions: negative total");
    std::vector<Composition> out;
    Composition cur(static_cast<size_t>(n_parts), 0);
    auto rec = [&](auto&& self, int part, int rem) -> void {
        if (part == n_parts - 1) {
            cur[part] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur[part] = v;
            self(self, part + 1, rem - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

namespace detail {

inline bigint composition_factorial(const Composition& a) {
    bigint f = 1;
    for (int v : a) f *= factorial(v);
    return f;
}

inline void require_composition(const Composition& a, int n, int p, const char* what) {
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument(std::string(what) + ": composition size mismatch");
    int s = 0;
    for (int v : a) {
        if (v < 0) throw std::invalid_argument(std::string(what) + ": negative part");
        s += v;
    }
    if (s != p) throw std::invalid_argument(std::string(what) + ": parts do not sum to degree");
}

}  // namespace detail

// All NxN nonnegative integer matrices with row sums alpha, column sums beta.
inline std::vector<std::vector<int>> margin_matrices(const Composition& alpha,
                                                     const Composition& beta) {
    const int n = static_cast<int>(alpha.size());
    if (static_cast<int>(beta.size()) != n)
        throw std::invalid_argument("margin_matrices: size mismatch");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(n * n), 0);
    std::vector<int> col_rem(beta.begin(), beta.end());
    auto fill_row = [&](auto&& self, int row, int col, int rem) -> void {
        if (col == n - 1) {
            if (rem > col_rem[col]) return;
            cur[row * n + col] = rem;
            col_rem[col] -= rem;
            if (row == n - 1) {
                bool ok = true;
                for (int j = 0; j < n; ++j) ok = ok && col_rem[j] == 0;
                if (ok) out.push_back(cur);
            } else {
                self(self, row + 1, 0, alpha[row + 1]);
            }
            col_rem[col] += rem;
            cur[row * n + col] = 0;
            return;
        }
        const int top = std::min(rem, col_rem[col]);
        for (int v = 0; v <= top; ++v) {
            cur[row * n + col] = v;
            col_rem[col] -= v;
            self(self, row, col + 1, rem - v);
            col_rem[col] += v;
        }
        cur[row * n + col] = 0;
    };
    if (n > 0) fill_row(fill_row, 0, 0, alpha[0]);
    return out;
}

inline cplx solid_harmonic(int n, int p, const Composition& alpha, const Composition& beta,
                           const ComplexMatrix& x) {
    detail::require_composition(alpha, n, p, "solid_harmonic");
    detail::require_composition(beta, n, p, "solid_harmonic");
    if (x.dim() != n) throw std::invalid_argument("solid_harmonic: argument dimension mismatch");
    const bigint fab = detail::composition_factorial(alpha) * detail::composition_factorial(beta);
    cplx sum = 0.0;
    for (const auto& a : margin_matrices(alpha, beta)) {
        bigint afact = 1;
        cplx mono = 1.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const int e = a[i * n + k];
                afact *= factorial(e);
                mono *= ipow(x(i, k), e);
            }
        // sqrt(alpha! beta!)/A! as a single square root of an exact rational
        sum += mono * std::sqrt(to_double(bigrat(fab, afact * afact)));
    }
    return sum;
}

// Sum of the diagonal matrix elements over all compositions of p.
inline cplx solid_character(int n, int p, const ComplexMatrix& x) {
    if (x.dim() != n) throw std::invalid_argument("solid_character: argument dimension mismatch");
    cplx sum = 0.0;
    for (const auto& alpha : compositions(n, p)) sum += solid_harmonic(n, p, alpha, alpha, x);
    return sum;
}

}  // namespace cwlab
