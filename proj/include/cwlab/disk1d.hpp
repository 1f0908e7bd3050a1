#pragma once

// One-dimensional layer: affine group, Lobachevsky half-plane, unit disk.
// Everything here has a closed form, so the 4-D machinery can be regressed
// against it piece by piece (same quadrature scheme, same Cayley pattern).
//
// Measures: disk  (2l-1)/pi (1-|z|^2)^{2(l-1)} |dz|
//           plane (2l-1)/(4 pi) Im(w)^{2(l-1)} |dw|
// The 2^{2l}(1-iw)^{-2l} prefactor below makes the map between them unitary.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "cwlab/exact.hpp"
#include "cwlab/matrix.hpp"
#include "cwlab/quadrature.hpp"

namespace cwlab {

namespace detail {

inline void require_weight(int lambda, const char* what) {
    if (lambda < 1) throw std::invalid_argument(std::string(what) + ": lambda must be >= 1");
}

inline void require_disk(cplx z, const char* what) {
    if (!is_in_domain(DomainPoint::disk(z)))
        throw std::invalid_argument(std::string(what) + ": point outside the unit disk");
}

inline void require_half_plane(cplx w, const char* what) {
    if (!is_in_domain(DomainPoint::half_plane(w)))
        throw std::invalid_argument(std::string(what) + ": point outside the upper half-plane");
}

}  // namespace detail

// binom(2l+n-1, n)^{1/2} z^n
inline cplx disk_basis(int lambda, int n, cplx z) {
    detail::require_weight(lambda, "disk_basis");
    if (n < 0) throw std::invalid_argument("disk_basis: n must be >= 0");
    detail::require_disk(z, "disk_basis");
    const double coeff = std::sqrt(to_double(bigrat(binomial(2 * lambda + n - 1, n))));
    return coeff * ipow(z, n);
}

// (1 - conj(z) z')^{-2l}, the closure of the basis series
inline cplx disk_kernel(int lambda, cplx z, cplx zp) {
    detail::require_weight(lambda, "disk_kernel");
    detail::require_disk(z, "disk_kernel");
    detail::require_disk(zp, "disk_kernel");
    return ipow(1.0 / (1.0 - std::conj(z) * zp), 2 * lambda);
}

// z = (1+iw)/(1-iw); boundary points pass through (real w lands on |z| = 1),
// only the pole is rejected.
inline cplx cayley1(cplx w) {
    const cplx den = 1.0 - cplx(0, 1) * w;
    if (std::abs(den) < 1e-14) throw std::invalid_argument("cayley1: pole at w = -i");
    return (1.0 + cplx(0, 1) * w) / den;
}

inline cplx cayley1_inv(cplx z) {
    const cplx den = 1.0 + z;
    if (std::abs(den) < 1e-14) throw std::invalid_argument("cayley1_inv: pole at z = -1");
    return cplx(0, 1) * (1.0 - z) / den;
}

// unitary transfer disk -> half-plane
template <class F>
auto disk_isometry(int lambda, F phi) {
    detail::require_weight(lambda, "disk_isometry");
    return [lambda, phi = std::move(phi)](cplx w) -> cplx {
        const cplx pref = ipow(1.0 / (1.0 - cplx(0, 1) * w), 2 * lambda);
        return std::ldexp(1.0, 2 * lambda) * pref * phi(cayley1(w));
    };
}

inline cplx halfplane_basis(int lambda, int n, cplx w) {
    detail::require_half_plane(w, "halfplane_basis");
    return disk_isometry(lambda, [lambda, n](cplx z) { return disk_basis(lambda, n, z); })(w);
}

// ((i/2)(conj(w) - w'))^{-2l}
inline cplx halfplane_kernel(int lambda, cplx w, cplx wp) {
    detail::require_weight(lambda, "halfplane_kernel");
    detail::require_half_plane(w, "halfplane_kernel");
    detail::require_half_plane(wp, "halfplane_kernel");
    return ipow(1.0 / (cplx(0, 0.5) * (std::conj(w) - wp)), 2 * lambda);
}

struct AffineElement {
    double a = 1.0;
    double b = 0.0;

    AffineElement(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("AffineElement: need finite a > 0");
    }
    static AffineElement identity() { return {1.0, 0.0}; }

    // (a', b')(a, b) = (a'a, b' + a'b)
    friend AffineElement operator*(const AffineElement& lhs, const AffineElement& rhs) {
        return {lhs.a * rhs.a, lhs.b + lhs.a * rhs.b};
    }
    AffineElement inverse() const { return {1.0 / a, -b / a}; }
};

// a^{-l} phi((w - b)/a); left action, unitary on the half-plane space
template <class F>
cplx affine_rep(int lambda, const AffineElement& g, F&& phi, cplx w) {
    detail::require_weight(lambda, "affine_rep");
    return std::pow(g.a, -lambda) * phi((w - g.b) / g.a);
}

// <f|g> over the disk: Gauss-Legendre radius, trapezoid angle.
template <class F, class G>
cplx disk_inner(int lambda, F f, G g, int n_radial = 64, int n_angular = 48) {
    detail::require_weight(lambda, "disk_inner");
    const QuadRule1D rad = gauss_legendre01(n_radial);
    const QuadRule1D ang = trapezoid_angles(n_angular);
    const double norm = (2.0 * lambda - 1.0) / M_PI;
    cplx acc = 0.0;
    for (int i = 0; i < rad.size(); ++i) {
        const double r = rad.nodes[i];
        const double wr =
            rad.weights[i] * norm * r * std::pow(1.0 - r * r, 2.0 * (lambda - 1));
        for (int k = 0; k < ang.size(); ++k) {
            const cplx z = std::polar(r, ang.nodes[k]);
            acc += wr * ang.weights[k] * std::conj(f(z)) * g(z);
        }
    }
    return acc;
}

// <f|g> over the half-plane: tan map along the boundary, t/(1-t) in height.
// The boundary direction converges only algebraically (integrands with the
// slowest admissible decay vanish to second order at the map endpoints), so
// it gets the larger default node count.
template <class F, class G>
cplx halfplane_inner(int lambda, F f, G g, int n_x = 192, int n_y = 128) {
    detail::require_weight(lambda, "halfplane_inner");
    const QuadRule1D rx = full_line_rule(n_x);
    const QuadRule1D ry = half_line_rule(n_y);
    const double norm = (2.0 * lambda - 1.0) / (4.0 * M_PI);
    cplx acc = 0.0;
    for (int j = 0; j < ry.size(); ++j) {
        const double y = ry.nodes[j];
        const double wy = ry.weights[j] * norm * std::pow(y, 2.0 * (lambda - 1));
        for (int i = 0; i < rx.size(); ++i) {
            const cplx w(rx.nodes[i], y);
            acc += wy * rx.weights[i] * std::conj(f(w)) * g(w);
        }
    }
    return acc;
}

}  // namespace cwlab
