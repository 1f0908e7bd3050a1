#pragma once

// SU(2,2) in its two 2x2-block realizations: f = [[R, iS], [-iT, Q]] keeps
// the antidiagonal form invariant and acts on the future tube, g = [[A, B],
// [C, D]] keeps diag(-I, I) invariant and acts on the matrix unit ball.
// Constraints are verified on construction to 1e-10. Group elements carry
// det = 1 when built from the exponential map or a coset section; unitary
// dressings diag(U1, U2) may introduce a phase (pseudo-unitary U(2,2)),
// which the constraint check deliberately allows.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "cwlab/exact.hpp"
#include "cwlab/matrix.hpp"

namespace cwlab {

inline constexpr double kConstraintTol = 1e-10;

inline ComplexMatrix pauli_matrix(int mu) {
    switch (mu) {
        case 0: return ComplexMatrix(2, {1.0, 0.0, 0.0, 1.0});
        case 1: return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
        case 2: return ComplexMatrix(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0});
        case 3: return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
        default: throw std::invalid_argument("pauli_matrix: index out of range");
    }
}

using RealFour = std::array<double, 4>;

// v_mu from v^mu with metric (+,-,-,-)
inline RealFour lower_index(const RealFour& v) { return {v[0], -v[1], -v[2], -v[3]}; }

// v[0] sigma^0 + v[1] sigma^1 + v[2] sigma^2 + v[3] sigma^3
inline ComplexMatrix pauli_combination(const RealFour& v) {
    ComplexMatrix m(2);
    for (int mu = 0; mu < 4; ++mu) m = m + v[mu] * pauli_matrix(mu);
    return m;
}

namespace detail {

inline ComplexMatrix assemble4(const ComplexMatrix& m11, const ComplexMatrix& m12,
                               const ComplexMatrix& m21, const ComplexMatrix& m22) {
    ComplexMatrix m(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m(i, j) = m11(i, j);
            m(i, j + 2) = m12(i, j);
            m(i + 2, j) = m21(i, j);
            m(i + 2, j + 2) = m22(i, j);
        }
    return m;
}

inline ComplexMatrix block2(const ComplexMatrix& m4, int bi, int bj) {
    ComplexMatrix b(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b(i, j) = m4(2 * bi + i, 2 * bj + j);
    return b;
}

inline ComplexMatrix gamma0() {
    ComplexMatrix z(2);
    return assemble4(z, ComplexMatrix::identity(2), ComplexMatrix::identity(2), z);
}

inline ComplexMatrix gamma5() {
    ComplexMatrix z(2);
    return assemble4(-ComplexMatrix::identity(2), z, z, ComplexMatrix::identity(2));
}

inline void require_pseudo_unitary(const ComplexMatrix& m4, const ComplexMatrix& form,
                                   const char* what) {
    if ((m4.adjoint() * form * m4 - form).max_abs() > kConstraintTol)
        throw std::invalid_argument(std::string(what) + ": constraint violated");
    if (std::abs(std::abs(m4.det()) - 1.0) > kConstraintTol)
        throw std::invalid_argument(std::string(what) + ": determinant off the unit circle");
}

}  // namespace detail

struct GroupElementOffdiag {
    ComplexMatrix R{2}, S{2}, T{2}, Q{2};

    GroupElementOffdiag(ComplexMatrix r, ComplexMatrix s, ComplexMatrix t, ComplexMatrix q)
        : R(std::move(r)), S(std::move(s)), T(std::move(t)), Q(std::move(q)) {
        detail::require_pseudo_unitary(to_matrix(), detail::gamma0(), "GroupElementOffdiag");
    }

    static GroupElementOffdiag identity() {
        ComplexMatrix z(2);
        return {ComplexMatrix::identity(2), z, z, ComplexMatrix::identity(2)};
    }

    ComplexMatrix to_matrix() const {
        return detail::assemble4(R, cplx(0, 1) * S, cplx(0, -1) * T, Q);
    }

    GroupElementOffdiag inverse() const {
        return {Q.adjoint(), -S.adjoint(), -T.adjoint(), R.adjoint()};
    }

    friend GroupElementOffdiag operator*(const GroupElementOffdiag& a,
                                         const GroupElementOffdiag& b) {
        ComplexMatrix m = a.to_matrix() * b.to_matrix();
        return {detail::block2(m, 0, 0), cplx(0, -1) * detail::block2(m, 0, 1),
                cplx(0, 1) * detail::block2(m, 1, 0), detail::block2(m, 1, 1)};
    }
};

struct GroupElementDiag {
    ComplexMatrix A{2}, B{2}, C{2}, D{2};

    GroupElementDiag(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c, ComplexMatrix d)
        : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
        detail::require_pseudo_unitary(to_matrix(), detail::gamma5(), "GroupElementDiag");
    }

    static GroupElementDiag identity() {
        ComplexMatrix z(2);
        return {ComplexMatrix::identity(2), z, z, ComplexMatrix::identity(2)};
    }

    ComplexMatrix to_matrix() const { return detail::assemble4(A, B, C, D); }

    GroupElementDiag inverse() const {
        return {A.adjoint(), -C.adjoint(), -B.adjoint(), D.adjoint()};
    }

    friend GroupElementDiag operator*(const GroupElementDiag& a, const GroupElementDiag& b) {
        return {a.A * b.A + a.B * b.C, a.A * b.B + a.B * b.D, a.C * b.A + a.D * b.C,
                a.C * b.B + a.D * b.D};
    }
};

struct LieParams {
    double tau = 0.0;       // dilation
    RealFour b{};           // translations
    RealFour c{};           // accelerations
    std::array<double, 6> omega{};  // Lorentz, pair order (01)(02)(03)(12)(13)(23)
};

// exp with scaling and squaring; Taylor tail cut far below 1e-13
inline ComplexMatrix matrix_exp(const ComplexMatrix& m) {
    int k = 0;
    double nrm = m.frobenius_norm();
    while (nrm > 0.5) {
        nrm *= 0.5;
        ++k;
    }
    ComplexMatrix a = std::ldexp(1.0, -k) * m;
    ComplexMatrix term = ComplexMatrix::identity(m.dim());
    ComplexMatrix sum = term;
    for (int i = 1; i <= 48; ++i) {
        term = (1.0 / i) * (term * a);
        sum = sum + term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < k; ++i) sum = sum * sum;
    return sum;
}

// Generator blocks: translations fill the upper-right corner with
// i b_mu sigma^mu, accelerations the lower-left with -i c_mu sigma_mu
// (= -i pauli_combination(c) after the double index flip), Lorentz pairs use
// (1/4)(sigma^mu sigmacheck^nu - sigma^nu sigmacheck^mu) and its partner, and
// the dilation sits on the diagonal as diag(I/2, -I/2); the sign is flipped
// relative to the gamma-matrix table so the induced tube action scales by
// e^{tau}, matching the stated dilation convention a = e^{tau}.
inline GroupElementOffdiag exp_element(const LieParams& u) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(u.tau) || !std::all_of(u.b.begin(), u.b.end(), finite) ||
        !std::all_of(u.c.begin(), u.c.end(), finite) ||
        !std::all_of(u.omega.begin(), u.omega.end(), finite))
        throw std::invalid_argument("exp_element: non-finite parameter");
    ComplexMatrix gen(4);
    for (int i = 0; i < 2; ++i) {
        gen(i, i) = 0.5 * u.tau;
        gen(i + 2, i + 2) = -0.5 * u.tau;
    }
    ComplexMatrix sb = cplx(0, 1) * pauli_combination(lower_index(u.b));
    ComplexMatrix tb = cplx(0, -1) * pauli_combination(u.c);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            gen(i, j + 2) += sb(i, j);
            gen(i + 2, j) += tb(i, j);
        }
    static const int pair_mu[6] = {0, 0, 0, 1, 1, 2};
    static const int pair_nu[6] = {1, 2, 3, 2, 3, 3};
    for (int k = 0; k < 6; ++k) {
        if (u.omega[k] == 0.0) continue;
        const int mu = pair_mu[k], nu = pair_nu[k];
        auto check = [](int m) { return m == 0 ? pauli_matrix(0) : -1.0 * pauli_matrix(m); };
        ComplexMatrix top =
            0.25 * (pauli_matrix(mu) * check(nu) - pauli_matrix(nu) * check(mu));
        ComplexMatrix bot =
            0.25 * (check(mu) * pauli_matrix(nu) - check(nu) * pauli_matrix(mu));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                gen(i, j) += u.omega[k] * top(i, j);
                gen(i + 2, j + 2) += u.omega[k] * bot(i, j);
            }
    }
    ComplexMatrix f = matrix_exp(gen);
    return {detail::block2(f, 0, 0), cplx(0, -1) * detail::block2(f, 0, 1),
            cplx(0, 1) * detail::block2(f, 1, 0), detail::block2(f, 1, 1)};
}

// Conjugation by (1/sqrt2) [[I, -I], [I, I]] carries the antidiagonal-form
// realization to the diagonal-form one.
inline GroupElementDiag upsilon(const GroupElementOffdiag& f) {
    const ComplexMatrix f4 = f.to_matrix();
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    const ComplexMatrix ups =
        (1.0 / std::sqrt(2.0)) * detail::assemble4(eye, -eye, eye, eye);
    const ComplexMatrix g4 = ups.adjoint() * f4 * ups;
    return {detail::block2(g4, 0, 0), detail::block2(g4, 0, 1), detail::block2(g4, 1, 0),
            detail::block2(g4, 1, 1)};
}

inline GroupElementOffdiag upsilon_inverse(const GroupElementDiag& g) {
    const ComplexMatrix g4 = g.to_matrix();
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    const ComplexMatrix ups =
        (1.0 / std::sqrt(2.0)) * detail::assemble4(eye, -eye, eye, eye);
    const ComplexMatrix f4 = ups * g4 * ups.adjoint();
    return {detail::block2(f4, 0, 0), cplx(0, -1) * detail::block2(f4, 0, 1),
            cplx(0, 1) * detail::block2(f4, 1, 0), detail::block2(f4, 1, 1)};
}

inline ComplexMatrix coset_point(const GroupElementDiag& g) {
    const cplx dd = g.D.det();
    if (std::abs(dd) < 1e-12) throw std::invalid_argument("coset_point: singular D block");
    ComplexMatrix z = g.B * g.D.inverse();
    if (!is_in_domain(DomainPoint::cartan(z)))
        throw std::logic_error("coset_point: image left the domain");
    return z;
}

struct IwasawaParts {
    ComplexMatrix Z{2};
    ComplexMatrix U1{2};
    ComplexMatrix U2{2};
};

inline IwasawaParts iwasawa(const GroupElementDiag& g) {
    IwasawaParts parts;
    parts.Z = coset_point(g);
    ComplexMatrix d1 = hermitian_sqrt_2x2(g.A * g.A.adjoint());
    ComplexMatrix d2 = hermitian_sqrt_2x2(g.D * g.D.adjoint());
    parts.U1 = d1.inverse() * g.A;
    parts.U2 = d2.inverse() * g.D;
    return parts;
}

// Unitary-free section over the ball: A = (I-ZZ+)^{-1/2}, D = (I-Z+Z)^{-1/2},
// B = Z D, C = Z+ A. Lands in the determinant-one subgroup.
inline GroupElementDiag coset_section(const ComplexMatrix& zt) {
    if (!is_in_domain(DomainPoint::cartan(zt)))
        throw std::invalid_argument("coset_section: point outside the domain");
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    ComplexMatrix d1 = hermitian_inv_sqrt_2x2(eye - zt * zt.adjoint());
    ComplexMatrix d2 = hermitian_inv_sqrt_2x2(eye - zt.adjoint() * zt);
    return {d1, zt * d2, zt.adjoint() * d1, d2};
}

// Ball action in the inverse-element form (A+ Z - C+)(D+ - B+ Z)^{-1}.
// Composition convention: this is a left anti-action,
//   act_cartan(g * h, Z) = act_cartan(h, act_cartan(g, Z)),
// so that multiplier() below satisfies the matching cocycle identity.
// The plain Moebius action (AZ + B)(CZ + D)^{-1} is act_cartan(g.inverse(), .).
inline ComplexMatrix act_cartan(const GroupElementDiag& g, const ComplexMatrix& z) {
    if (!is_in_domain(DomainPoint::cartan(z)))
        throw std::invalid_argument("act_cartan: point outside the domain");
    ComplexMatrix den = g.D.adjoint() - g.B.adjoint() * z;
    if (std::abs(den.det()) < 1e-10)
        throw std::logic_error("act_cartan: singular denominator at an interior point");
    return (g.A.adjoint() * z - g.C.adjoint()) * den.inverse();
}

// det(D+ - B+ Z)^{-lambda}; integer power of the principal determinant so no
// branch ambiguity arises.
inline cplx multiplier(const GroupElementDiag& g, const ComplexMatrix& z, int lambda) {
    if (!is_in_domain(DomainPoint::cartan(z)))
        throw std::invalid_argument("multiplier: point outside the domain");
    const cplx den = (g.D.adjoint() - g.B.adjoint() * z).det();
    return lambda >= 0 ? ipow(1.0 / den, lambda) : ipow(den, -lambda);
}

inline ComplexMatrix act_tube(const GroupElementOffdiag& f, const ComplexMatrix& w) {
    if (!is_in_domain(DomainPoint::tube(w)))
        throw std::invalid_argument("act_tube: point outside the tube");
    ComplexMatrix den = f.T * w + f.Q;
    if (std::abs(den.det()) < 1e-10)
        throw std::logic_error("act_tube: singular denominator at an interior point");
    return (f.R * w + f.S) * den.inverse();
}

// Z = (I-iW)^{-1}(I+iW); the two resolvent orderings agree and are both
// formed as a cross-check.
inline ComplexMatrix cayley(const ComplexMatrix& w) {
    if (w.dim() != 2) throw std::invalid_argument("cayley: W must be 2x2");
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    ComplexMatrix m = eye - cplx(0, 1) * w;
    if (std::abs(m.det()) < 1e-12) throw std::invalid_argument("cayley: singular I - iW");
    ComplexMatrix p = eye + cplx(0, 1) * w;
    ComplexMatrix a = m.inverse() * p;
    ComplexMatrix b = p * m.inverse();
    if ((a - b).max_abs() > 1e-12 * std::max(1.0, a.max_abs()))
        throw std::logic_error("cayley: resolvent orderings disagree");
    return a;
}

inline ComplexMatrix cayley_inv(const ComplexMatrix& z) {
    if (z.dim() != 2) throw std::invalid_argument("cayley_inv: Z must be 2x2");
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    ComplexMatrix p = eye + z;
    if (std::abs(p.det()) < 1e-12) throw std::invalid_argument("cayley_inv: singular I + Z");
    ComplexMatrix m = eye - z;
    ComplexMatrix a = cplx(0, 1) * (m * p.inverse());
    ComplexMatrix b = cplx(0, 1) * (p.inverse() * m);
    if ((a - b).max_abs() > 1e-12 * std::max(1.0, a.max_abs()))
        throw std::logic_error("cayley_inv: resolvent orderings disagree");
    return a;
}

inline double haar_density_coset(const ComplexMatrix& z) {
    if (!is_in_domain(DomainPoint::cartan(z)))
        throw std::invalid_argument("haar_density_coset: point outside the domain");
    const double det = (ComplexMatrix::identity(2) - z * z.adjoint()).det().real();
    return 1.0 / (det * det * det * det);
}

struct HopfParams {
    bool infinite = false;
    cplx z = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
};

inline ComplexMatrix hopf(cplx z, double beta1, double beta2) {
    const double delta = 1.0 / std::sqrt(1.0 + std::norm(z));
    ComplexMatrix u(2);
    u(0, 0) = delta * std::polar(1.0, beta1);
    u(0, 1) = -z * delta * std::polar(1.0, beta2);
    u(1, 0) = std::conj(z) * delta * std::polar(1.0, beta1);
    u(1, 1) = delta * std::polar(1.0, beta2);
    return u;
}

// limit point of the fibration chart
inline ComplexMatrix hopf_infinity(double beta1, double beta2) {
    ComplexMatrix u(2);
    u(0, 1) = -std::polar(1.0, beta2);
    u(1, 0) = std::polar(1.0, beta1);
    return u;
}

inline HopfParams hopf_params(const ComplexMatrix& u) {
    if (u.dim() != 2) throw std::invalid_argument("hopf_params: U must be 2x2");
    if ((u * u.adjoint() - ComplexMatrix::identity(2)).max_abs() > kConstraintTol)
        throw std::invalid_argument("hopf_params: not unitary");
    HopfParams p;
    if (std::abs(u(1, 1)) < 1e-12) {
        p.infinite = true;
        p.beta1 = std::arg(u(1, 0));
        p.beta2 = std::arg(-u(0, 1));
        return p;
    }
    p.beta1 = std::arg(u(0, 0));
    p.beta2 = std::arg(u(1, 1));
    p.z = -u(0, 1) / u(1, 1);
    return p;
}

template <class Rng>
LieParams sample_lie_params(Rng& rng, double spread = 0.5) {
    std::uniform_real_distribution<double> uni(-spread, spread);
    LieParams u;
    u.tau = uni(rng);
    for (auto& v : u.b) v = uni(rng);
    for (auto& v : u.c) v = uni(rng);
    for (auto& v : u.omega) v = uni(rng);
    return u;
}

template <class Rng>
GroupElementDiag sample_group(Rng& rng, double spread = 0.5) {
    return upsilon(exp_element(sample_lie_params(rng, spread)));
}

}  // namespace cwlab
