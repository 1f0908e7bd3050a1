// Wavelet layer over the Cartan domain: coherent-state coefficients,
// admissibility, tight-frame matrix elements, analysis/synthesis in
// coefficient space, the isotropy family of the mother wavelet, and the
// scalar slice of its tube-side picture.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cwlab/group.hpp"
#include "cwlab/hilbert4d.hpp"

namespace cwlab {

// (2 pi)^3 / 2: Haar volume of U(2) in the Hopf coordinates, one factor per
// fiber copy.
inline double u2_volume() {
    return 4.0 * M_PI * M_PI * M_PI;
}

// c_psi = c_lambda^-1 ((2 pi)^3 / 2)^2; the mother wavelet is the constant
// unit function, square integrable over the group for lambda >= 4.
inline double admissibility_constant(int lambda) {
    detail::require_measure_lambda(lambda, "admissibility_constant");
    const double v = u2_volume();
    return v * v / measure_constant(lambda);
}

// Coefficient of the coherent state U(g)*1 along one basis label:
// conj(det(D)^-lambda phi_idx(B D^-1)). Summed against the basis this
// reproduces det(D+ - B+ Z)^-lambda.
inline cplx coherent_coeff(int lambda, const GroupElementDiag& g, const BasisIndex& idx) {
    detail::require_measure_lambda(lambda, "coherent_coeff");
    require_basis_index(idx);
    const ComplexMatrix zt = coset_point(g);
    return std::conj(ipow(1.0 / g.D.det(), lambda) * basis_fn(lambda, idx, zt));
}

namespace detail {

// coherent_coeff at the unitary-free section over zt. The section's D block
// is (I - zt+ zt)^{-1/2}, so det(D)^-lambda = det(I - zt+ zt)^{lambda/2}
// exactly; evaluating through this scalar avoids assembling a 4x4 element at
// Monte Carlo draws near the boundary, where the constructor's constraint
// check amplifies rounding.
inline cplx section_coeff(int lambda, const ComplexMatrix& zt, const BasisIndex& idx) {
    const double det = (ComplexMatrix::identity(2) - zt.adjoint() * zt).det().real();
    return std::conj(std::pow(det, 0.5 * lambda) * basis_fn(lambda, idx, zt));
}

// Coherent state of the section evaluated at z:
// det(D+ - B+ z)^-lambda = det(I - zt+ zt)^{lambda/2} det(I - zt+ z)^-lambda.
inline cplx section_state(int lambda, const ComplexMatrix& zt, const ComplexMatrix& z) {
    const double det = (ComplexMatrix::identity(2) - zt.adjoint() * zt).det().real();
    const cplx den = (ComplexMatrix::identity(2) - zt.adjoint() * z).det();
    return std::pow(det, 0.5 * lambda) * ipow(1.0 / den, lambda);
}

}  // namespace detail

// MC oracle for the admissibility integral over the coset: the integrand
// det(I - Z Z+)^lambda against the invariant coset density has total mass
// 1/c_lambda, which squares with admissibility_constant through the fiber
// volume u2_volume()^2.
inline McEstimate admissibility_mc(int lambda, const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "admissibility_mc");
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const double pi2 = M_PI * M_PI;
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
            term = pi2 * pi2 * std::pow(det, lambda) * haar_density_coset(z);
        }
        sum.add(term);
        sumsq += std::norm(term);
    }
    const int n = spec.mc_samples;
    const cplx mean = sum.total() / double(n);
    const double var = std::max(0.0, (sumsq - n * std::norm(mean)) / (n - 1.0));
    return {mean, std::sqrt(var / n), inside};
}

// Matrix element <phi_idx| A |phi_idx'> of the resolution operator
// A = int_G |psi_g><psi_g| dmu(g), Monte Carlo route. The compact fiber
// H = U(2)^2 integrates to the constant u2_volume()^2 because the integrand
// only sees B D^-1 and |det D|; the base integral runs over the ball with
// the invariant coset density.
inline McEstimate frame_element_mc(int lambda, const BasisIndex& idx, const BasisIndex& idxp,
                                   const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "frame_element_mc");
    require_basis_index(idx);
    require_basis_index(idxp);
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const double pi2 = M_PI * M_PI;
    const double fiber = u2_volume() * u2_volume();
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
            term = pi2 * pi2 * fiber * detail::section_coeff(lambda, z, idx) *
                   std::conj(detail::section_coeff(lambda, z, idxp)) * haar_density_coset(z);
        }
        sum.add(term);
        sumsq += std::norm(term);
    }
    const int n = spec.mc_samples;
    const cplx mean = sum.total() / double(n);
    const double var = std::max(0.0, (sumsq - n * std::norm(mean)) / (n - 1.0));
    return {mean, std::sqrt(var / n), inside};
}

// Deterministic route of the same matrix element: a Lebesgue-weight sweep
// (the dnu sweep at weight power zero) against coherent coefficients taken
// at the validated section. The surviving integrand carries polynomial
// degree max(deg, deg') + (lambda - 4) per side, which fixes the node
// counts.
inline cplx frame_element(int lambda, const BasisIndex& idx, const BasisIndex& idxp,
                          const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "frame_element");
    if (spec.mode == QuadratureSpec::Mode::MonteCarlo)
        return frame_element_mc(lambda, idx, idxp, spec).value;
    require_basis_index(idx);
    require_basis_index(idxp);
    spec.validate();
    const double fiber = u2_volume() * u2_volume();
    const double lebesgue = 1.0 / measure_constant(4);
    const int d = std::max(idx.degree(), idxp.degree()) + (lambda - 4);
    PairwiseSum acc;
    detail::sweep_cartan(4, detail::derive_counts(spec, 4, d),
                         [&](const ComplexMatrix& z, double w) {
                             const GroupElementDiag g = coset_section(z);
                             acc.add(fiber * coherent_coeff(lambda, g, idx) *
                                     std::conj(coherent_coeff(lambda, g, idxp)) *
                                     haar_density_coset(z) * lebesgue * w);
                         });
    return acc.total();
}

// Wavelet transform of a finite signal, evaluated coefficient-wise:
// Phi(g) = (1/c_psi) sum_idx conj(psihat_idx(g)) phihat_idx.
struct WaveletCoefficients {
    int lambda = 4;
    CoeffVector signal;

    cplx operator()(const GroupElementDiag& g) const {
        PairwiseSum acc;
        for (const auto& [idx, c] : signal.terms)
            acc.add(std::conj(coherent_coeff(lambda, g, idx)) * c);
        return acc.total() / admissibility_constant(lambda);
    }
};

inline WaveletCoefficients analyze(int lambda, const CoeffVector& phi) {
    detail::require_measure_lambda(lambda, "analyze");
    for (const auto& [idx, c] : phi.terms) require_basis_index(idx);
    return {lambda, phi};
}

// Group-integral route of the reconstruction formula
// int_G Phi(g) psi_g(Z) dmu(g), fiber-reduced as in frame_element_mc and
// sampled over the ball. The coefficient route below is its exact limit.
inline McEstimate synthesize_mc(int lambda, const WaveletCoefficients& coeffs,
                                const ComplexMatrix& z, const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "synthesize_mc");
    if (coeffs.lambda != lambda) throw std::invalid_argument("synthesize_mc: lambda mismatch");
    if (!is_in_domain(DomainPoint::cartan(z)))
        throw std::invalid_argument("synthesize_mc: point outside the domain");
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const double pi2 = M_PI * M_PI;
    const double fiber = u2_volume() * u2_volume();
    const double cpsi = admissibility_constant(lambda);
    PairwiseSum sum;
    double sumsq = 0.0;
    int inside = 0;
    ComplexMatrix zt(2);
    for (int s = 0; s < spec.mc_samples; ++s) {
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) zt(i, k) = uniform_complex(rng, 1.0);
        cplx term = 0.0;
        if (is_in_domain(DomainPoint::cartan(zt))) {
            ++inside;
            PairwiseSum phi;
            for (const auto& [idx, c] : coeffs.signal.terms)
                phi.add(std::conj(detail::section_coeff(lambda, zt, idx)) * c);
            term = pi2 * pi2 * fiber * (phi.total() / cpsi) *
                   detail::section_state(lambda, zt, z) * haar_density_coset(zt);
        }
        sum.add(term);
        sumsq += std::norm(term);
    }
    const int n = spec.mc_samples;
    const cplx mean = sum.total() / double(n);
    const double var = std::max(0.0, (sumsq - n * std::norm(mean)) / (n - 1.0));
    return {mean, std::sqrt(var / n), inside};
}

// Reconstruction at a point. By frame tightness the group integral collapses
// to sum_idx phihat_idx basis_fn(Z) in coefficient space, so the
// deterministic route is exact for the finite signals used here; Monte Carlo
// mode runs the honest group integral instead.
inline cplx synthesize(int lambda, const WaveletCoefficients& coeffs, const ComplexMatrix& z,
                       const QuadratureSpec& spec) {
    detail::require_measure_lambda(lambda, "synthesize");
    if (coeffs.lambda != lambda) throw std::invalid_argument("synthesize: lambda mismatch");
    if (spec.mode == QuadratureSpec::Mode::MonteCarlo)
        return synthesize_mc(lambda, coeffs, z, spec).value;
    spec.validate();
    return coeffs.signal.evaluable(lambda)(z);
}

// Symmetry family of the mother wavelet: elements whose Upsilon image has a
// vanishing B block, i.e. S = -T and Q = R, with the pseudo-unitarity
// constraints reduced to S+S + R+R = I and S+R = R+S. They act on the mother
// wavelet by a global phase only.
enum class IsotropyClass { none, unitary, null_translation, mixed };

inline IsotropyClass classify_isotropy(const GroupElementOffdiag& f) {
    const double tol = 1e-8;
    const GroupElementDiag g = upsilon(f);
    if (g.B.max_abs() > tol) return IsotropyClass::none;
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    if ((f.S.adjoint() * f.S + f.R.adjoint() * f.R - eye).max_abs() > tol)
        return IsotropyClass::none;
    if ((f.S.adjoint() * f.R - f.R.adjoint() * f.S).max_abs() > tol) return IsotropyClass::none;
    if (f.S.max_abs() <= tol) return IsotropyClass::unitary;
    if (std::abs(f.S.det()) <= tol) return IsotropyClass::null_translation;
    return IsotropyClass::mixed;
}

inline bool isotropy_check(const GroupElementOffdiag& f) {
    return classify_isotropy(f) != IsotropyClass::none;
}

// One-parameter isotropy family generated by a hermitian direction b:
// S = eps b_mu sigma^mu, T = -S, Q = R = (I - S^2)^{1/2}. Null directions
// det(b_mu sigma^mu) = b^2 = 0 give the parabolic (light-like translation)
// family; a pure translation (T = 0) along the same direction is not
// isotropic.
inline GroupElementOffdiag isotropy_element(const RealFour& b, double eps) {
    const ComplexMatrix s = eps * pauli_combination(b);
    const ComplexMatrix r2 = ComplexMatrix::identity(2) - s * s;
    if (hermitian_eigs_2x2(r2).first <= 0.0)
        throw std::invalid_argument("isotropy_element: parameter leaves the group");
    const ComplexMatrix r = hermitian_sqrt_2x2(r2);
    return {r, s, -1.0 * s, r};
}

// Scalar temporal slice W = w sigma^0 of the tube mother wavelet,
// psi(w) = 2^{2 lambda} (1 - i w)^{-2 lambda}.
struct MotherSliceRow {
    double x = 0.0;
    double y = 0.0;
    double modulus = 0.0;
    double phase = 0.0;  // principal value in (-pi, pi]
};

// Dense row-major table (y outer and ascending, x inner); the slice lies in
// the tube only for y > 0, so grids touching y <= 0 are rejected.
inline std::vector<MotherSliceRow> mother_slice(int lambda, double xmin, double xmax,
                                                double ymin, double ymax, int nx, int ny) {
    if (lambda < 1) throw std::invalid_argument("mother_slice: lambda < 1");
    if (nx < 1 || ny < 1) throw std::invalid_argument("mother_slice: empty grid");
    if (!(xmin <= xmax) || !(ymin <= ymax))
        throw std::invalid_argument("mother_slice: malformed rectangle");
    if (!(ymin > 0.0)) throw std::invalid_argument("mother_slice: grid touches y <= 0");
    std::vector<MotherSliceRow> rows;
    rows.reserve(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        const double y = ny == 1 ? ymin : ymin + (ymax - ymin) * iy / (ny - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = nx == 1 ? xmin : xmin + (xmax - xmin) * ix / (nx - 1);
            const cplx val =
                std::ldexp(1.0, 2 * lambda) * ipow(1.0 / (1.0 - cplx(0, 1) * cplx(x, y)), 2 * lambda);
            double phase = std::arg(val);
            if (phase <= -M_PI) phase = M_PI;
            rows.push_back({x, y, std::abs(val), phase});
        }
    }
    return rows;
}

}  // namespace cwlab
