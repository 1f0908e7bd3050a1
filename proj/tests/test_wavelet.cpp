#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cwlab/wavelet.hpp"

using namespace cwlab;

namespace {

Evaluable unit_fn() {
    return {[](const ComplexMatrix&) { return cplx(1.0); }, 0};
}

BasisIndex make_idx(int tj, int m, int tq1, int tq2) {
    return {HalfInt::from_twice(tj), m, HalfInt::from_twice(tq1), HalfInt::from_twice(tq2)};
}

CoeffVector unit_signal() {
    CoeffVector v;
    v.set(make_idx(0, 0, 0, 0), 1.0);
    return v;
}

}  // namespace

TEST_CASE("admissibility constant", "[wavelet]") {
    CHECK(u2_volume() == Catch::Approx(0.5 * std::pow(2.0 * M_PI, 3)).epsilon(1e-15));
    CHECK(admissibility_constant(4) ==
          Catch::Approx((4.0 / 3.0) * std::pow(M_PI, 10)).epsilon(1e-13));
    for (int lam = 4; lam <= 8; ++lam) {
        const double c = admissibility_constant(lam);
        CHECK(std::isfinite(c));
        CHECK(c > 0.0);
        CHECK(c == Catch::Approx(u2_volume() * u2_volume() / measure_constant(lam)));
    }
    CHECK_THROWS_AS(admissibility_constant(3), std::invalid_argument);
}

TEST_CASE("admissibility integral by monte carlo", "[wavelet]") {
    QuadratureSpec mc;
    mc.mode = QuadratureSpec::Mode::MonteCarlo;
    mc.mc_samples = 200000;
    for (int lam : {4, 6}) {
        const McEstimate est = admissibility_mc(lam, mc);
        REQUIRE(est.std_error > 0.0);
        CHECK(std::abs(est.value - 1.0 / measure_constant(lam)) < 3.0 * est.std_error);
        // scaled by the fiber volume this is the admissibility constant
        const double v2 = u2_volume() * u2_volume();
        CHECK(std::abs(v2 * est.value - admissibility_constant(lam)) <
              3.0 * v2 * est.std_error);
    }
}

TEST_CASE("coherent coefficients at the identity give a delta", "[wavelet]") {
    const GroupElementDiag e = GroupElementDiag::identity();
    for (const auto& ix : basis_indices(3)) {
        const cplx want = ix.degree() == 0 ? 1.0 : 0.0;
        CHECK(std::abs(coherent_coeff(4, e, ix) - want) < 1e-15);
    }
    CHECK_THROWS_AS(coherent_coeff(3, e, make_idx(0, 0, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(coherent_coeff(4, e, make_idx(1, 0, 0, 1)), std::invalid_argument);
}

TEST_CASE("coherent expansion reproduces the closed form", "[wavelet]") {
    std::mt19937_64 rng(101);
    const auto idx = basis_indices(30);
    for (int trial = 0; trial < 2; ++trial) {
        const GroupElementDiag g = sample_group(rng, 0.3);
        std::vector<cplx> coeff(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) coeff[k] = coherent_coeff(4, g, idx[k]);
        for (int p = 0; p < 10; ++p) {
            const ComplexMatrix z = sample_cartan(rng, 0.5);
            PairwiseSum acc;
            for (std::size_t k = 0; k < idx.size(); ++k)
                acc.add(coeff[k] * basis_fn(4, idx[k], z));
            const cplx closed = multiplier(g, z, 4);
            CHECK(std::abs(acc.total() - closed) < 1e-7 * std::abs(closed));
        }
    }
}

TEST_CASE("ground coefficient modulus traces the coset point", "[wavelet]") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const GroupElementDiag g = sample_group(rng, 0.6);
        const ComplexMatrix zt = coset_point(g);
        const double want =
            std::pow((ComplexMatrix::identity(2) - zt * zt.adjoint()).det().real(), 4);
        const double got = std::norm(coherent_coeff(4, g, make_idx(0, 0, 0, 0)));
        CHECK(got == Catch::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("coherent coefficients factor through the section", "[wavelet]") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix zt = sample_cartan(rng, 0.9);
        const GroupElementDiag g = coset_section(zt);
        for (const auto& ix : basis_indices(2))
            CHECK(std::abs(coherent_coeff(4, g, ix) - detail::section_coeff(4, zt, ix)) <
                  1e-13);
    }
}

TEST_CASE("resolution operator is tight on the low block", "[wavelet]") {
    const QuadratureSpec spec;
    const double cpsi = admissibility_constant(4);

    // the ground diagonal entry is exactly the admissibility integral
    CHECK(std::abs(frame_element(4, make_idx(0, 0, 0, 0), make_idx(0, 0, 0, 0), spec) - cpsi) <
          1e-12 * cpsi);

    // diagonal entries agree across degrees, off-diagonal entries vanish
    const BasisIndex d1 = make_idx(1, 0, 1, -1);
    const BasisIndex d2 = make_idx(2, 0, 0, 2);
    CHECK(std::abs(frame_element(4, d1, d1, spec) - cpsi) < 1e-10 * cpsi);
    CHECK(std::abs(frame_element(4, d2, d2, spec) - cpsi) < 1e-10 * cpsi);
    CHECK(std::abs(frame_element(4, d1, make_idx(1, 0, 1, 1), spec)) < 1e-10 * cpsi);
    CHECK(std::abs(frame_element(4, d2, make_idx(0, 1, 0, 0), spec)) < 1e-10 * cpsi);

    const double cpsi5 = admissibility_constant(5);
    CHECK(std::abs(frame_element(5, d1, d1, spec) - cpsi5) < 1e-10 * cpsi5);
    CHECK(std::abs(frame_element(5, d1, make_idx(1, 1, 1, -1), spec)) < 1e-10 * cpsi5);

    QuadratureSpec bad;
    bad.radial_nodes = 0;
    CHECK_THROWS_AS(frame_element(4, d1, d1, bad), std::invalid_argument);
}

TEST_CASE("resolution operator by monte carlo", "[wavelet]") {
    QuadratureSpec mc;
    mc.mode = QuadratureSpec::Mode::MonteCarlo;
    mc.mc_samples = 200000;
    const double cpsi = admissibility_constant(4);

    const McEstimate diag = frame_element_mc(4, make_idx(0, 0, 0, 0), make_idx(0, 0, 0, 0), mc);
    REQUIRE(diag.std_error > 0.0);
    CHECK(std::abs(diag.value - cpsi) < 3.0 * diag.std_error);

    const McEstimate off = frame_element_mc(4, make_idx(1, 0, 1, -1), make_idx(1, 0, 1, 1), mc);
    CHECK(std::abs(off.value) < 3.0 * off.std_error);

    // mode dispatch reuses the estimator
    CHECK(frame_element(4, make_idx(1, 0, 1, -1), make_idx(1, 0, 1, 1), mc) == off.value);
}

TEST_CASE("analysis evaluates coefficient sums", "[wavelet]") {
    const double cpsi = admissibility_constant(4);
    const WaveletCoefficients unit = analyze(4, unit_signal());
    CHECK(std::abs(unit(GroupElementDiag::identity()) - 1.0 / cpsi) < 1e-18);

    // a single basis term keeps the closed form visible
    std::mt19937_64 rng(19);
    CoeffVector one;
    const BasisIndex ix = make_idx(1, 1, 1, -1);
    one.set(ix, cplx(0.7, -0.2));
    const WaveletCoefficients wc = analyze(4, one);
    for (int trial = 0; trial < 5; ++trial) {
        const GroupElementDiag g = sample_group(rng, 0.5);
        const cplx want = ipow(1.0 / g.D.det(), 4) * basis_fn(4, ix, coset_point(g)) *
                          cplx(0.7, -0.2) / cpsi;
        CHECK(std::abs(wc(g) - want) < 1e-15);
    }
}

TEST_CASE("analysis matches its quadrature definition", "[wavelet]") {
    std::mt19937_64 rng(7);
    CoeffVector v;
    v.set(make_idx(0, 0, 0, 0), cplx(0.4, -0.1));
    v.set(make_idx(1, 0, 1, 1), cplx(0.0, 1.0));
    v.set(make_idx(2, 0, 2, 0), cplx(-0.7, 0.3));
    const WaveletCoefficients wc = analyze(4, v);
    const double cpsi = admissibility_constant(4);

    std::vector<GroupElementDiag> gs;
    std::vector<std::pair<Evaluable, Evaluable>> pairs;
    for (int trial = 0; trial < 2; ++trial) {
        gs.push_back(sample_group(rng, 0.05));
        Evaluable psi = rep_apply(4, gs.back(), unit_fn());
        psi.degree_bound = 4;  // effective band limit near the identity
        pairs.push_back({psi, v.evaluable(4)});
    }
    const auto overlaps = inner_product_many(4, pairs, QuadratureSpec{});
    for (std::size_t k = 0; k < gs.size(); ++k) {
        CHECK(std::abs(wc(gs[k]) - overlaps[k] / cpsi) < 1e-5);
        // the overlap itself is reproduced far below the contract
        CHECK(std::abs(cpsi * wc(gs[k]) - overlaps[k]) < 1e-6);
    }
}

TEST_CASE("analysis is covariant", "[wavelet]") {
    std::mt19937_64 rng(23);
    CoeffVector v;
    v.set(make_idx(0, 0, 0, 0), cplx(1.0, 0.5));
    v.set(make_idx(1, 0, -1, 1), cplx(0.3, -0.8));
    const WaveletCoefficients wc = analyze(4, v);
    const double cpsi = admissibility_constant(4);

    std::vector<cplx> shifted;
    std::vector<std::pair<Evaluable, Evaluable>> pairs;
    for (int trial = 0; trial < 2; ++trial) {
        const GroupElementDiag g0 = sample_group(rng, 0.025);
        const GroupElementDiag g = sample_group(rng, 0.025);
        Evaluable psi = rep_apply(4, g, unit_fn());
        psi.degree_bound = 4;
        Evaluable moved = rep_apply(4, g0, v.evaluable(4));
        moved.degree_bound = 4;
        pairs.push_back({psi, moved});
        shifted.push_back(wc(g0.inverse() * g));
    }
    const auto lhs = inner_product_many(4, pairs, QuadratureSpec{});
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        CHECK(std::abs(lhs[k] / cpsi - shifted[k]) < 1e-9);
        CHECK(std::abs(lhs[k] - cpsi * shifted[k]) < 1e-6);
    }
}

TEST_CASE("synthesis reconstructs the signal", "[wavelet]") {
    const QuadratureSpec spec;
    std::mt19937_64 rng(31);

    const WaveletCoefficients unit = analyze(4, unit_signal());
    for (int p = 0; p < 10; ++p) {
        const ComplexMatrix z = sample_cartan(rng, 0.8);
        CHECK(std::abs(synthesize(4, unit, z, spec) - 1.0) < 1e-6);
    }

    CoeffVector v;
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (const auto& ix : basis_indices(4))
        if (coef(rng) > 0.55) v.set(ix, cplx(coef(rng), coef(rng)));
    if (v.terms.empty()) v.set(make_idx(2, 1, 0, 0), cplx(0.3, 0.4));
    const Evaluable direct = v.evaluable(4);
    const WaveletCoefficients wc = analyze(4, v);
    for (int p = 0; p < 10; ++p) {
        const ComplexMatrix z = sample_cartan(rng, 0.7);
        const cplx want = direct(z);
        const cplx got = synthesize(4, wc, z, spec);
        CHECK(std::abs(got - want) <= 1e-5 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }

    CHECK_THROWS_AS(synthesize(5, wc, ComplexMatrix(2), spec), std::invalid_argument);
}

TEST_CASE("group-integral synthesis agrees with the coefficient path", "[wavelet]") {
    std::mt19937_64 rng(31);
    CoeffVector v;
    v.set(make_idx(0, 0, 0, 0), cplx(0.2, 0.1));
    v.set(make_idx(1, 0, 1, -1), cplx(-0.5, 0.4));
    v.set(make_idx(2, 1, 2, -2), cplx(0.9, 0.0));
    const WaveletCoefficients wc = analyze(4, v);
    const ComplexMatrix z = sample_cartan(rng, 0.4);

    QuadratureSpec mc;
    mc.mode = QuadratureSpec::Mode::MonteCarlo;
    mc.mc_samples = 200000;
    const McEstimate est = synthesize_mc(4, wc, z, mc);
    REQUIRE(est.std_error > 0.0);
    const cplx want = v.evaluable(4)(z);
    CHECK(std::abs(est.value - want) < 3.0 * est.std_error);
    CHECK(synthesize(4, wc, z, mc) == est.value);
    CHECK_THROWS_AS(synthesize_mc(4, wc, 2.0 * ComplexMatrix::identity(2), mc),
                    std::invalid_argument);
}

TEST_CASE("isotropy subgroup of the mother wavelet", "[wavelet]") {
    CHECK(isotropy_check(GroupElementOffdiag::identity()));

    // a light-like direction builds the parabolic family
    const GroupElementOffdiag null_tr = isotropy_element({1, 0, 0, 1}, 0.3);
    CHECK(isotropy_check(null_tr));
    CHECK(classify_isotropy(null_tr) == IsotropyClass::null_translation);
    CHECK(std::abs(null_tr.S.det()) < 1e-12);

    // pure translations are never isotropic, time-like least of all
    LieParams time_tr;
    time_tr.b = {1, 0, 0, 0};
    CHECK_FALSE(isotropy_check(exp_element(time_tr)));
    LieParams null_pure;
    null_pure.b = {1, 0, 0, 1};
    CHECK_FALSE(isotropy_check(exp_element(null_pure)));

    // unitary family and the mixed time-like family
    const ComplexMatrix r = hopf(cplx(0.3, -0.4), 0.0, 0.0);
    const GroupElementOffdiag rot{r, ComplexMatrix(2), ComplexMatrix(2), r};
    CHECK(isotropy_check(rot));
    CHECK(classify_isotropy(rot) == IsotropyClass::unitary);
    const GroupElementOffdiag timelike = isotropy_element({1, 0, 0, 0}, 0.4);
    CHECK(isotropy_check(timelike));
    CHECK(classify_isotropy(timelike) == IsotropyClass::mixed);

    CHECK(classify_isotropy(exp_element(time_tr)) == IsotropyClass::none);
    CHECK_THROWS_AS(isotropy_element({1, 0, 0, 1}, 0.6), std::invalid_argument);
}

TEST_CASE("isotropy elements move the mother wavelet by a phase", "[wavelet]") {
    std::mt19937_64 rng(3);
    const std::vector<GroupElementOffdiag> family = {
        isotropy_element({1, 0, 0, 1}, 0.3),
        isotropy_element({1, 0, 0, 0}, 0.4),
        {hopf(cplx(0.3, -0.4), 0.0, 0.0), ComplexMatrix(2), ComplexMatrix(2),
         hopf(cplx(0.3, -0.4), 0.0, 0.0)}};
    for (const auto& f : family) {
        REQUIRE(isotropy_check(f));
        const Evaluable moved = rep_apply(4, upsilon(f), unit_fn());
        for (int p = 0; p < 8; ++p) {
            const ComplexMatrix z = sample_cartan(rng, 0.8);
            CHECK(std::abs(std::abs(moved(z)) - 1.0) < 1e-10);
        }
    }

    // contrast: a pure translation deforms the modulus
    LieParams tr;
    tr.b = {1, 0, 0, 0};
    const Evaluable moved = rep_apply(4, upsilon(exp_element(tr)), unit_fn());
    double contrast = 0.0;
    for (int p = 0; p < 8; ++p)
        contrast = std::max(contrast,
                            std::abs(std::abs(moved(sample_cartan(rng, 0.8))) - 1.0));
    CHECK(contrast > 1e-3);
}

TEST_CASE("mother wavelet slice", "[wavelet]") {
    // closed form of the scalar slice at lambda = 1
    const auto rows = mother_slice(1, -2.0, 2.0, 0.5, 1.5, 9, 5);
    REQUIRE(rows.size() == 45);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        // row-major layout: y varies slowest and both axes are affine
        const int iy = int(k) / 9, ix = int(k) % 9;
        CHECK(r.x == Catch::Approx(-2.0 + 4.0 * ix / 8.0).margin(1e-15));
        CHECK(r.y == Catch::Approx(0.5 + 1.0 * iy / 4.0).margin(1e-15));
        const double denom = (1.0 + r.y) * (1.0 + r.y) + r.x * r.x;
        CHECK(r.modulus == Catch::Approx(4.0 / denom).epsilon(1e-13));
        CHECK(r.phase > -M_PI);
        CHECK(r.phase <= M_PI);
    }

    // boundary row limit and the unit value at w = i
    const auto edge = mother_slice(1, -2.0, 2.0, 1e-9, 1e-9, 9, 1);
    for (const auto& r : edge)
        CHECK(r.modulus == Catch::Approx(4.0 / (1.0 + r.x * r.x)).margin(1e-7));
    const auto at_i = mother_slice(1, 0.0, 0.0, 1.0, 1.0, 1, 1);
    CHECK(at_i[0].modulus == Catch::Approx(1.0).margin(1e-15));
    CHECK(at_i[0].phase == Catch::Approx(0.0).margin(1e-15));

    // the slice is the tube mother wavelet on W = w I
    const Evaluable mother = to_tube(4, unit_fn());
    for (const auto& r : mother_slice(4, -1.0, 1.0, 0.5, 1.5, 3, 3)) {
        const cplx val = mother(cplx(r.x, r.y) * ComplexMatrix::identity(2));
        CHECK(std::abs(val) == Catch::Approx(r.modulus).epsilon(1e-12));
        CHECK(std::arg(val) == Catch::Approx(r.phase).margin(1e-12));
    }

    CHECK_THROWS_AS(mother_slice(0, -1.0, 1.0, 0.5, 1.0, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(mother_slice(1, -1.0, 1.0, 0.0, 1.0, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(mother_slice(1, -1.0, 1.0, -0.5, 1.0, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(mother_slice(1, 1.0, -1.0, 0.5, 1.0, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(mother_slice(1, -1.0, 1.0, 0.5, 1.0, 0, 3), std::invalid_argument);
}
