#pragma once

// Holomorphic L2 space over the 2x2 matrix ball: orthonormal polynomial
// basis N det(Z)^m D^j_{q1,q2}(Z), inner products by product quadrature in
// the polar factorization Z = U1 diag(xi1, xi2) U2+, reproducing kernels,
// the weighted Moebius representation, and the transfer to the future tube.
//
// Measure: dnu = c det(I - Z Z+)^{lambda-4} |dZ|, with the constant
// c = (lambda-1)(lambda-2)^2(lambda-3)/pi^4 making <1|1> = 1. In polar
// coordinates |dZ| = J |dxi1| |dxi2| ds(U1) ds(U2), J = (rho1^2-rho2^2)^2/2,
// where ds is the sphere section measure (1+r^2)^{-2} r dr dalpha of total
// mass pi. The sphere radius is quadratured through u = r^2/(1+r^2), which
// turns ds into du/2 dalpha and every angular-surviving integrand of a
// polynomial pair into a polynomial in u, so the product rules below are
// spectrally exact once the counts clear the degree bound.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cwlab/exact.hpp"
#include "cwlab/group.hpp"
#include "cwlab/master.hpp"
#include "cwlab/matrix.hpp"
#include "cwlab/quadrature.hpp"
#include "cwlab/wigner.hpp"

namespace cwlab {

// Basis label: degree-(2j+2m) polynomial, projections q1, q2 in j + Z.
struct BasisIndex {
    HalfInt j;
    int m = 0;
    HalfInt q1;
    HalfInt q2;

    int degree() const { return j.twice + 2 * m; }
    friend constexpr auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

inline void require_basis_index(const BasisIndex& idx) {
    require_projection(idx.j, idx.q1, "basis index");
    require_projection(idx.j, idx.q2, "basis index");
    if (idx.m < 0) throw std::invalid_argument("basis index: m < 0");
}

// All labels of degree <= max_degree, grouped by degree; there are
// (n+1)(n+2)(n+3)/6 of each exact degree n.
inline std::vector<BasisIndex> basis_indices(int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("basis_indices: negative degree");
    std::vector<BasisIndex> out;
    for (int n = 0; n <= max_degree; ++n)
        for (int tj = n; tj >= 0; tj -= 2)
            for (int tq1 = -tj; tq1 <= tj; tq1 += 2)
                for (int tq2 = -tj; tq2 <= tj; tq2 += 2)
                    out.push_back({HalfInt::from_twice(tj), (n - tj) / 2,
                                   HalfInt::from_twice(tq1), HalfInt::from_twice(tq2)});
    return out;
}

namespace detail {

inline void require_measure_lambda(int lambda, const char* what) {
    if (lambda < 4) throw std::invalid_argument(std::string(what) + ": lambda < 4");
}

}  // namespace detail

// sqrt[ (2j+1)/(lambda-1) C(m+lambda-2, lambda-2) C(m+2j+lambda-1, lambda-2) ],
// exact rational under the root.
inline double norm_const(int lambda, HalfInt j, int m) {
    detail::require_measure_lambda(lambda, "norm_const");
    if (j.twice < 0) throw std::invalid_argument("norm_const: j < 0");
    if (m < 0) throw std::invalid_argument("norm_const: m < 0");
    const bigint num = bigint(j.twice + 1) * binomial(m + lambda - 2, lambda - 2) *
                       binomial(m + j.twice + lambda - 1, lambda - 2);
    return std::sqrt(to_double(bigrat(num, bigint(lambda - 1))));
}

inline cplx basis_fn(int lambda, const BasisIndex& idx, const ComplexMatrix& z) {
    require_basis_index(idx);
    if (!is_in_domain(DomainPoint::cartan(z)))
        throw std::invalid_argument("basis_fn: point outside the domain");
    return norm_const(lambda, idx.j, idx.m) * ipow(z.det(), idx.m) *
           wigner_d(idx.j, idx.q1, idx.q2, z);
}

// Black-box integrand. The degree bound drives quadrature node counts; for
// non-polynomial functions it acts as an effective band limit and accuracy
// decays with the function's coefficient tail beyond it.
struct Evaluable {
    std::function<cplx(const ComplexMatrix&)> fn;
    int degree_bound = 16;

    cplx operator()(const ComplexMatrix& z) const { return fn(z); }
};

inline Evaluable basis_evaluable(int lambda, const BasisIndex& idx) {
    require_basis_index(idx);
    return {[lambda, idx](const ComplexMatrix& z) { return basis_fn(lambda, idx, z); },
            idx.degree()};
}

// Finitely supported coefficient vector. degree_bound < 0 means "derive from
// the support".
struct CoeffVector {
    std::map<BasisIndex, cplx> terms;
    int degree_bound = -1;

    void set(const BasisIndex& idx, cplx c) {
        require_basis_index(idx);
        terms[idx] = c;
    }

    cplx get(const BasisIndex& idx) const {
        auto it = terms.find(idx);
        return it == terms.end() ? cplx(0.0) : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto& [idx, c] : terms) d = std::max(d, idx.degree());
        return d;
    }

    Evaluable evaluable(int lambda) const {
        detail::require_measure_lambda(lambda, "CoeffVector::evaluable");
        for (const auto& [idx, c] : terms) require_basis_index(idx);
        CoeffVector copy = *this;
        return {[lambda, copy](const ComplexMatrix& z) {
                    cplx s = 0.0;
                    for (const auto& [idx, c] : copy.terms) s += c * basis_fn(lambda, idx, z);
                    return s;
                },
                degree_bound < 0 ? degree() : degree_bound};
    }
};

struct QuadratureSpec {
    enum class Mode { GaussProduct, MonteCarlo };

    Mode mode = Mode::GaussProduct;
    int radial_nodes = 64;
    int angular_nodes = 64;
    int mc_samples = 100000;
    std::uint64_t seed = 20140305;

    void validate() const {
        if (radial_nodes < 2) throw std::invalid_argument("QuadratureSpec: radial_nodes < 2");
        if (angular_nodes < 1) throw std::invalid_argument("QuadratureSpec: angular_nodes < 1");
        if (mc_samples < 2) throw std::invalid_argument("QuadratureSpec: mc_samples < 2");
    }
};

// (lambda-1)(lambda-2)^2(lambda-3)/pi^4
inline double measure_constant(int lambda) {
    detail::require_measure_lambda(lambda, "measure_constant");
    const double l = lambda;
    const double pi2 = M_PI * M_PI;
    return (l - 1) * (l - 2) * (l - 2) * (l - 3) / (pi2 * pi2);
}

namespace detail {

// Per-axis counts for the 8-D product rule. A pair of side degree d has
// theta frequencies in [-d, d] (one xi factor per matrix entry), alpha
// frequencies in [-2d, 2d] (both sides carry sphere entries), radial
// polynomial degree 2d + 2 lambda - 3 after the Jacobian and weight, and
// sphere polynomial degree <= d in u. The caller's spec caps every axis.
struct GridCounts {
    int n_rho = 2;
    int n_theta = 1;
    int n_u = 2;
    int n_alpha = 1;
};

inline GridCounts derive_counts(const QuadratureSpec& spec, int lambda, int degree) {
    const int d = std::max(degree, 0);
    GridCounts c;
    c.n_theta = std::min(spec.angular_nodes, d + 1);
    c.n_alpha = std::min(spec.angular_nodes, 2 * d + 1);
    c.n_rho = std::min(spec.radial_nodes, std::max(2, d + lambda));
    c.n_u = std::min(spec.radial_nodes, std::max(2, d + 2));
    return c;
}

struct SphereNode {
    ComplexMatrix u{2};
    double w = 0.0;
};

// ds(U) = (1+r^2)^{-2} r dr dalpha = du/2 dalpha, u = r^2/(1+r^2).
inline std::vector<SphereNode> sphere_nodes(int n_u, int n_alpha) {
    const QuadRule1D rad = gauss_legendre01(n_u);
    const QuadRule1D ang = trapezoid_angles(n_alpha);
    std::vector<SphereNode> out;
    out.reserve(static_cast<std::size_t>(rad.size()) * ang.size());
    for (int i = 0; i < rad.size(); ++i) {
        const double r = std::sqrt(rad.nodes[i] / (1.0 - rad.nodes[i]));
        for (int k = 0; k < ang.size(); ++k)
            out.push_back({hopf(std::polar(r, ang.nodes[k]), 0.0, 0.0),
                           0.5 * rad.weights[i] * ang.weights[k]});
    }
    return out;
}

struct XiNode {
    cplx xi;
    double w = 0.0;  // GL weight * rho * (1 - rho^2)^{lambda-4}
    double rho2 = 0.0;
};

inline std::vector<XiNode> xi_nodes(int n_rho, int n_theta, int lambda) {
    const QuadRule1D rad = gauss_legendre01(n_rho);
    const QuadRule1D ang = trapezoid_angles(n_theta);
    std::vector<XiNode> out;
    out.reserve(static_cast<std::size_t>(rad.size()) * ang.size());
    for (int i = 0; i < rad.size(); ++i) {
        const double rho = rad.nodes[i];
        const double wr = rad.weights[i] * rho * std::pow(1.0 - rho * rho, lambda - 4);
        for (int k = 0; k < ang.size(); ++k)
            out.push_back({std::polar(rho, ang.nodes[k]), wr * ang.weights[k], rho * rho});
    }
    return out;
}

// Full product sweep of dnu; cb(Z, weight) for every node.
template <class Cb>
void sweep_cartan(int lambda, const GridCounts& n, Cb&& cb) {
    const std::vector<SphereNode> sph = sphere_nodes(n.n_u, n.n_alpha);
    const std::vector<XiNode> xi = xi_nodes(n.n_rho, n.n_theta, lambda);
    const double clam = measure_constant(lambda);
    ComplexMatrix z(2);
    for (const SphereNode& u1 : sph) {
        for (const SphereNode& u2 : sph) {
            // couplings of xi1 / xi2 into Z = U1 diag(xi1, xi2) U2+
            cplx a[2][2], b[2][2];
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) {
                    a[i][k] = u1.u(i, 0) * std::conj(u2.u(k, 0));
                    b[i][k] = u1.u(i, 1) * std::conj(u2.u(k, 1));
                }
            const double wu = u1.w * u2.w;
            for (const XiNode& x1 : xi) {
                for (const XiNode& x2 : xi) {
                    const double dj = x1.rho2 - x2.rho2;
                    const double w = clam * 0.5 * dj * dj * x1.w * x2.w * wu;
                    for (int i = 0; i < 2; ++i)
                        for (int k = 0; k < 2; ++k) z(i, k) = x1.xi * a[i][k] + x2.xi * b[i][k];
                    cb(z, w);
                }
            }
        }
    }
}

}  // namespace detail

// Shared-grid quadrature of several pairs <f|g>; the sweep resolves the
// largest degree bound among the sides.
inline std::vector<cplx> inner_product_many(
    int lambda, const std::vector<std::pair<Evaluable, Evaluable>>& pairs,
    const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "inner_product_many");
    spec.validate();
    if (spec.mode != QuadratureSpec::Mode::GaussProduct)
        throw std::invalid_argument("inner_product_many: GaussProduct mode only");
    int d = 0;
    for (const auto& [f, g] : pairs) d = std::max({d, f.degree_bound, g.degree_bound});
    std::vector<PairwiseSum> acc(pairs.size());
    detail::sweep_cartan(lambda, detail::derive_counts(spec, lambda, d),
                         [&](const ComplexMatrix& z, double w) {
                             for (std::size_t k = 0; k < pairs.size(); ++k)
                                 acc[k].add(std::conj(pairs[k].first(z)) * pairs[k].second(z) * w);
                         });
    std::vector<cplx> out(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) out[k] = acc[k].total();
    return out;
}

struct McEstimate {
    cplx value;
    double std_error = 0.0;
    int inside = 0;  // draws that landed in the domain
};

// Uniform draws on the polydisc (volume pi^4) with a domain indicator; the
// weight det(I - Z Z+)^{lambda-4} completes dnu. Unbiased, no ratio.
inline McEstimate inner_product_mc(int lambda, const Evaluable& f, const Evaluable& g,
                                   const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "inner_product_mc");
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const double pi2 = M_PI * M_PI;
    const double scale = pi2 * pi2 * measure_constant(lambda);
    PairwiseSum sum;
    double sumsq = 0.0;
    int inside = 0;
    ComplexMatrix z(2);
    for (int s = 0; s < spec.mc_samples; ++s) {
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) z(i, k) = uniform_complex(rng, 1.0);
        cplx term = 0.0;
        if (is_in_domain(DomainPoint::cartan(z))) {
            ++inside;
            const double det = (ComplexMatrix::identity(2) - z * z.adjoint()).det().real();
            term = scale * std::pow(det, lambda - 4) * std::conj(f(z)) * g(z);
        }
        sum.add(term);
        sumsq += std::norm(term);
    }
    const int n = spec.mc_samples;
    const cplx mean = sum.total() / double(n);
    const double var = std::max(0.0, (sumsq - n * std::norm(mean)) / (n - 1.0));
    return {mean, std::sqrt(var / n), inside};
}

inline cplx inner_product(int lambda, const Evaluable& f, const Evaluable& g,
                          const QuadratureSpec& spec) {
    if (spec.mode == QuadratureSpec::Mode::MonteCarlo)
        return inner_product_mc(lambda, f, g, spec).value;
    return inner_product_many(lambda, {{f, g}}, spec)[0];
}

// Closed-form radial moment of the squared basis norm: with s = j + m,
// [(s)^2 + (s + 2q^2 + 1) lambda - 5q^2 - 1] /
// [pi^2 (lambda-1) C(s+q+lambda-1, lambda-1) C(s-q+lambda-1, lambda-1)].
inline double radial_integral(int lambda, HalfInt j, int m, HalfInt q) {
    detail::require_measure_lambda(lambda, "radial_integral");
    require_projection(j, q, "radial_integral");
    if (m < 0) throw std::invalid_argument("radial_integral: m < 0");
    const int t = j.twice + 2 * m;   // 2(j+m)
    const int tq = q.twice;          // 2q
    // numerator in quarter units, exact
    const long long num4 = static_cast<long long>(t) * t +
                           static_cast<long long>(lambda) * (2 * t + 2 * tq * tq + 4) -
                           5LL * tq * tq - 4;
    const bigint den = bigint(lambda - 1) * binomial((t + tq) / 2 + lambda - 1, lambda - 1) *
                       binomial((t - tq) / 2 + lambda - 1, lambda - 1);
    return 0.25 * static_cast<double>(num4) / (M_PI * M_PI * to_double(den));
}

namespace detail {

// 4 pi^2 c_lambda int int J Omega rho1^{e1+1} rho2^{e2+1}; exact Gauss.
inline double radial_pair_quadrature(int lambda, int e1, int e2, int nodes) {
    const QuadRule1D gl = gauss_legendre01(nodes);
    double outer = 0.0;
    for (int i = 0; i < gl.size(); ++i) {
        const double r1 = gl.nodes[i];
        const double w1 = gl.weights[i] * std::pow(r1, e1 + 1) * std::pow(1.0 - r1 * r1, lambda - 4);
        double inner = 0.0;
        for (int k = 0; k < gl.size(); ++k) {
            const double r2 = gl.nodes[k];
            const double dj = r1 * r1 - r2 * r2;
            inner += gl.weights[k] * std::pow(r2, e2 + 1) *
                     std::pow(1.0 - r2 * r2, lambda - 4) * 0.5 * dj * dj;
        }
        outer += w1 * inner;
    }
    return 4.0 * M_PI * M_PI * measure_constant(lambda) * outer;
}

}  // namespace detail

// Quadrature route to radial_integral, kept separate as an oracle.
inline double radial_integral_quadrature(int lambda, HalfInt j, int m, HalfInt q, int nodes) {
    detail::require_measure_lambda(lambda, "radial_integral_quadrature");
    require_projection(j, q, "radial_integral_quadrature");
    if (m < 0) throw std::invalid_argument("radial_integral_quadrature: m < 0");
    const int t = j.twice + 2 * m;
    return detail::radial_pair_quadrature(lambda, t + q.twice, t - q.twice, nodes);
}

namespace detail {

inline cplx sphere_overlap_on(const std::vector<SphereNode>& nodes, HalfInt j, HalfInt a,
                              HalfInt jp, HalfInt b, HalfInt q) {
    PairwiseSum acc;
    for (const SphereNode& n : nodes)
        acc.add(std::conj(wigner_d(j, a, q, n.u)) * wigner_d(jp, b, q, n.u) * n.w);
    return acc.total();
}

}  // namespace detail

// int ds(U) conj(D^j_{a,q}(U)) D^{j'}_{b,q}(U) over the sphere section;
// equals delta_{j j'} delta_{a b} pi/(2j+1).
inline cplx sphere_overlap(HalfInt j, HalfInt a, HalfInt jp, HalfInt b, HalfInt q,
                           int radial_nodes, int angular_nodes) {
    require_projection(j, a, "sphere_overlap");
    require_projection(j, q, "sphere_overlap");
    require_projection(jp, b, "sphere_overlap");
    require_projection(jp, q, "sphere_overlap");
    return detail::sphere_overlap_on(detail::sphere_nodes(radial_nodes, angular_nodes), j, a, jp,
                                     b, q);
}

// Gram matrix of basis_indices(max_degree) under quadrature, evaluated in
// separated form: uniform angles factor the polar integral into one radial
// pair integral and two sphere overlaps per shared inner projection, with a
// degree-block selection rule that the uniform rule enforces exactly. The
// spec's node counts size the radial and sphere factors.
inline std::vector<std::vector<cplx>> gram_matrix(int lambda, int max_degree,
                                                  const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "gram_matrix");
    spec.validate();
    const std::vector<BasisIndex> idx = basis_indices(max_degree);
    const std::vector<detail::SphereNode> sph =
        detail::sphere_nodes(spec.radial_nodes, spec.angular_nodes);
    std::map<std::pair<int, int>, double> radial;
    std::map<std::array<int, 5>, cplx> sphere;
    auto radial_at = [&](int e1, int e2) {
        auto it = radial.find({e1, e2});
        if (it == radial.end())
            it = radial.emplace(std::pair{e1, e2},
                                detail::radial_pair_quadrature(lambda, e1, e2, spec.radial_nodes))
                     .first;
        return it->second;
    };
    auto sphere_at = [&](int tj, int ta, int tjp, int tb, int tq) {
        const std::array<int, 5> key{tj, ta, tjp, tb, tq};
        auto it = sphere.find(key);
        if (it == sphere.end())
            it = sphere
                     .emplace(key, detail::sphere_overlap_on(
                                       sph, HalfInt::from_twice(tj), HalfInt::from_twice(ta),
                                       HalfInt::from_twice(tjp), HalfInt::from_twice(tb),
                                       HalfInt::from_twice(tq)))
                     .first;
        return it->second;
    };
    const std::size_t n = idx.size();
    std::vector<std::vector<cplx>> g(n, std::vector<cplx>(n, cplx(0.0)));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            const BasisIndex& x = idx[r];
            const BasisIndex& y = idx[c];
            if (x.degree() != y.degree()) continue;  // theta selection rule, exact
            const int deg = x.degree();
            const int tmin = std::min(x.j.twice, y.j.twice);
            cplx sum = 0.0;
            for (int tq = -tmin; tq <= tmin; tq += 2) {
                const double rad = radial_at(deg + tq, deg - tq);
                const cplx s1 = sphere_at(x.j.twice, x.q1.twice, y.j.twice, y.q1.twice, tq);
                const cplx s2 = sphere_at(x.j.twice, x.q2.twice, y.j.twice, y.q2.twice, tq);
                sum += rad * s1 * std::conj(s2);
            }
            const cplx val =
                norm_const(lambda, x.j, x.m) * norm_const(lambda, y.j, y.m) * sum;
            g[r][c] = val;
            g[c][r] = std::conj(val);
        }
    }
    return g;
}

// det(I - Z+ Z')^{-lambda}; also valid for lambda in {2, 3} where the space
// itself is not offered.
inline cplx bergman_kernel(int lambda, const ComplexMatrix& z, const ComplexMatrix& zp) {
    if (lambda < 2) throw std::invalid_argument("bergman_kernel: lambda < 2");
    if (!is_in_domain(DomainPoint::cartan(z)) || !is_in_domain(DomainPoint::cartan(zp)))
        throw std::invalid_argument("bergman_kernel: point outside the domain");
    const cplx den = (ComplexMatrix::identity(2) - z.adjoint() * zp).det();
    return ipow(1.0 / den, lambda);
}

// Sum over basis labels of conj(phi(Z)) phi(Z') up to the truncation degree.
inline cplx bergman_series(int lambda, const ComplexMatrix& z, const ComplexMatrix& zp,
                           Truncation trunc) {
    detail::require_measure_lambda(lambda, "bergman_series");
    if (trunc.degree_max < 0) throw std::invalid_argument("bergman_series: negative degree_max");
    if (!is_in_domain(DomainPoint::cartan(z)) || !is_in_domain(DomainPoint::cartan(zp)))
        throw std::invalid_argument("bergman_series: point outside the domain");
    if (!convergence_ok(z.adjoint() * zp))
        throw std::invalid_argument("bergman_series: series does not converge here");
    // Grouped by j: the Wigner blocks are shared by every det power, and the
    // label sum for fixed (j, m) is the entrywise block overlap.
    const cplx detz = std::conj(z.det());
    const cplx detzp = zp.det();
    PairwiseSum acc;
    for (int tj = 0; tj <= trunc.degree_max; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        const ComplexMatrix bz = wigner_block(j, z);
        const ComplexMatrix bzp = wigner_block(j, zp);
        PairwiseSum block;
        for (int a = 0; a <= tj; ++a)
            for (int b = 0; b <= tj; ++b) block.add(std::conj(bz(a, b)) * bzp(a, b));
        const cplx overlap = block.total();
        cplx detpow = 1.0;
        for (int m = 0; 2 * m + tj <= trunc.degree_max; ++m) {
            const double n = norm_const(lambda, j, m);
            acc.add(n * n * detpow * overlap);
            detpow *= detz * detzp;
        }
    }
    return acc.total();
}

// (U(g) phi)(Z) = det(D+ - B+ Z)^{-lambda} phi((A+ Z - C+)(D+ - B+ Z)^{-1}).
// The result is rational, so the degree bound is an effective band limit;
// the default suits group elements near the identity and callers integrating
// sharper elements should raise it.
inline Evaluable rep_apply(int lambda, const GroupElementDiag& g, const Evaluable& phi) {
    detail::require_measure_lambda(lambda, "rep_apply");
    return {[lambda, g, phi](const ComplexMatrix& z) {
                return multiplier(g, z, lambda) * phi(act_cartan(g, z));
            },
            phi.degree_bound + 4};
}

// phi~(W) = 2^{2 lambda} det(I - iW)^{-lambda} phi(Z(W)). Pulled back to the
// ball this is det(I + Z)^lambda phi(Z), hence the +2 lambda degree bound.
inline Evaluable to_tube(int lambda, const Evaluable& phi) {
    detail::require_measure_lambda(lambda, "to_tube");
    return {[lambda, phi](const ComplexMatrix& w) {
                if (!is_in_domain(DomainPoint::tube(w)))
                    throw std::invalid_argument("to_tube: point outside the tube");
                const cplx den = (ComplexMatrix::identity(2) - cplx(0, 1) * w).det();
                return std::ldexp(1.0, 2 * lambda) * ipow(1.0 / den, lambda) * phi(cayley(w));
            },
            phi.degree_bound + 2 * lambda};
}

inline cplx tube_kernel(int lambda, const ComplexMatrix& w, const ComplexMatrix& wp) {
    if (lambda < 2) throw std::invalid_argument("tube_kernel: lambda < 2");
    if (!is_in_domain(DomainPoint::tube(w)) || !is_in_domain(DomainPoint::tube(wp)))
        throw std::invalid_argument("tube_kernel: point outside the tube");
    const cplx den = (cplx(0.0, 0.5) * (w.adjoint() - wp)).det();
    return ipow(1.0 / den, lambda);
}

// Tube picture of the representation:
// (U~(f) phi~)(W) = det(R+ - T+ W)^{-lambda} phi~((Q+ W - S+)(R+ - T+ W)^{-1}).
inline Evaluable tube_rep_apply(int lambda, const GroupElementOffdiag& f, const Evaluable& phit) {
    detail::require_measure_lambda(lambda, "tube_rep_apply");
    return {[lambda, f, phit](const ComplexMatrix& w) {
                if (!is_in_domain(DomainPoint::tube(w)))
                    throw std::invalid_argument("tube_rep_apply: point outside the tube");
                const ComplexMatrix den = f.R.adjoint() - f.T.adjoint() * w;
                if (std::abs(den.det()) < 1e-12)
                    throw std::logic_error("tube_rep_apply: singular denominator");
                const ComplexMatrix arg = (f.Q.adjoint() * w - f.S.adjoint()) * den.inverse();
                return ipow(1.0 / den.det(), lambda) * phit(arg);
            },
            phit.degree_bound + 4};
}

// Tube-side inner product by transporting the ball grid: the tube measure
// (c/2^4) det((i/2)(W+ - W))^{lambda-4} d^4x d^4y pulled through the rational
// map leaves |det(I + Z)|^{-2 lambda} against dnu. Works in both modes.
inline cplx tube_inner_product(int lambda, const Evaluable& ft, const Evaluable& gt,
                               const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "tube_inner_product");
    auto pull = [lambda](const Evaluable& h) {
        return Evaluable{[lambda, h](const ComplexMatrix& z) {
                             const double d2 = std::norm((ComplexMatrix::identity(2) + z).det());
                             const ComplexMatrix w = cayley_inv(z);
                             return h(w) * ipow(1.0 / std::sqrt(d2), lambda);
                         },
                         h.degree_bound};
    };
    return inner_product(lambda, pull(ft), pull(gt), spec);
}

}  // namespace cwlab
