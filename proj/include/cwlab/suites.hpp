#pragma once

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "cwlab/disk1d.hpp"
#include "cwlab/solidharm.hpp"
#include "cwlab/wavelet.hpp"

namespace cwlab {

// One verification run: pass holds exactly when max_residual <= tolerance.
struct SuiteReport {
    std::string suite;
    int cases = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

struct SuiteConfig {
    int lambda = 4;
    std::uint64_t seed = 20140305;
    double tol = 1e-8;
    int degree = 40;
};

namespace detail {

struct ResidualTracker {
    int cases = 0;
    double worst = 0.0;
    void add(double r) {
        ++cases;
        if (r > worst) worst = r;
    }
};

inline ComplexMatrix random_entries(std::mt19937_64& rng, int n, double radius) {
    ComplexMatrix x(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) x(i, k) = uniform_complex(rng, radius);
    return x;
}

// Contractions of the form Zt+ Z stay inside the convergence region of every
// master-theorem series; entry radius 0.35 keeps the degree-40 tail far below
// the tolerances used here.
inline ComplexMatrix random_convergent(std::mt19937_64& rng) {
    return sample_cartan(rng, 0.35).adjoint() * sample_cartan(rng, 0.35);
}

inline cplx det_power(const ComplexMatrix& x, int lambda) {
    return std::pow((ComplexMatrix::identity(x.dim()) - x).det(), -lambda);
}

inline double frobenius(const ComplexMatrix& x) {
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i)
        for (int k = 0; k < x.dim(); ++k) s += std::norm(x(i, k));
    return std::sqrt(s);
}

inline ResidualTracker suite_smt(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix x = random_convergent(rng);
        const cplx want = det_power(x, 1);
        t.add(std::abs(smt_lhs(x, 1.0, {cfg.degree}) - want) / std::abs(want));
    }
    return t;
}

inline ResidualTracker suite_emsmt(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix x = random_convergent(rng);
        const cplx want = det_power(x, cfg.lambda);
        t.add(std::abs(extended_smt_lhs_n2(x, 1.0, cfg.lambda, {cfg.degree}) - want) /
              std::abs(want));
    }
    return t;
}

inline ResidualTracker suite_msmt(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix x = random_entries(rng, 3, 1.0);
        x = (0.3 / frobenius(x)) * x;
        const cplx want = det_power(x, cfg.lambda);
        t.add(std::abs(msmt_lhs(3, x, 1.0, cfg.lambda, {cfg.degree}) - want) /
              std::abs(want));
    }
    return t;
}

inline ResidualTracker suite_binom(const SuiteConfig&) {
    ResidualTracker t;
    for (int lambda = 2; lambda <= 8; ++lambda)
        for (int p = 0; p <= 12; ++p)
            for (int n = 0; n <= 12; ++n) {
                const auto [f, g] = binomial_identity(lambda, p, n);
                t.add(std::abs(to_double(bigrat(f - g))));
            }
    return t;
}

inline ResidualTracker suite_wigner(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    const int top = std::max(1, 2 * std::min(cfg.degree, 4));
    for (int tj = 0; tj <= top; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        const ComplexMatrix x = random_entries(rng, 2, 1.0);
        const ComplexMatrix y = random_entries(rng, 2, 1.0);
        t.add((wigner_block(j, x) * wigner_block(j, y) - wigner_block(j, x * y)).max_abs());
        t.add(std::abs(wigner_character(j, x) - wigner_block(j, x).trace()));
        for (int tq1 = -tj; tq1 <= tj; tq1 += 2)
            for (int tq2 = -tj; tq2 <= tj; tq2 += 2) {
                const HalfInt q1 = HalfInt::from_twice(tq1);
                const HalfInt q2 = HalfInt::from_twice(tq2);
                t.add(std::abs(wigner_d(j, q1, q2, x.transpose()) - wigner_d(j, q2, q1, x)));
            }
    }
    return t;
}

inline ResidualTracker suite_solid(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    for (int p = 0; p <= std::min(cfg.degree, 3); ++p) {
        const ComplexMatrix x = random_entries(rng, 3, 1.0);
        const ComplexMatrix y = random_entries(rng, 3, 1.0);
        const auto labels = compositions(3, p);
        for (const auto& alpha : labels)
            for (const auto& beta : labels) {
                cplx sum = 0.0;
                for (const auto& gamma : labels)
                    sum += solid_harmonic(3, p, alpha, gamma, x) *
                           solid_harmonic(3, p, gamma, beta, y);
                t.add(std::abs(sum - solid_harmonic(3, p, alpha, beta, x * y)));
            }
        cplx tr = 0.0;
        for (const auto& alpha : labels) tr += solid_harmonic(3, p, alpha, alpha, x);
        t.add(std::abs(tr - solid_character(3, p, x)));
    }
    // two rows reduce to Wigner entries with doubled projections alpha0 - alpha1
    for (int p = 0; p <= 4; ++p) {
        const ComplexMatrix x = random_entries(rng, 2, 1.0);
        const HalfInt j = HalfInt::from_twice(p);
        for (const auto& alpha : compositions(2, p))
            for (const auto& beta : compositions(2, p))
                t.add(std::abs(solid_harmonic(2, p, alpha, beta, x) -
                               wigner_d(j, HalfInt::from_twice(alpha[0] - alpha[1]),
                                        HalfInt::from_twice(beta[0] - beta[1]), x)));
    }
    return t;
}

inline ResidualTracker suite_group(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    const ComplexMatrix eye4 = ComplexMatrix::identity(4);
    for (int trial = 0; trial < 15; ++trial) {
        const GroupElementOffdiag f = exp_element(sample_lie_params(rng, 0.5));
        t.add((f.to_matrix() * f.inverse().to_matrix() - eye4).max_abs());
        const GroupElementDiag g = upsilon(f);
        const GroupElementDiag h = sample_group(rng, 0.5);
        t.add((upsilon_inverse(g).to_matrix() - f.to_matrix()).max_abs());

        const ComplexMatrix z = sample_cartan(rng, 0.7);
        t.add((act_cartan(g * h, z) - act_cartan(h, act_cartan(g, z))).max_abs());
        t.add(std::abs(multiplier(g * h, z, cfg.lambda) -
                       multiplier(g, z, cfg.lambda) *
                           multiplier(h, act_cartan(g, z), cfg.lambda)));

        const IwasawaParts p = iwasawa(g);
        t.add((p.U1 * p.U1.adjoint() - ComplexMatrix::identity(2)).max_abs());
        t.add((p.U2 * p.U2.adjoint() - ComplexMatrix::identity(2)).max_abs());
        const GroupElementDiag dressing{p.U1, ComplexMatrix::zero(2), ComplexMatrix::zero(2),
                                        p.U2};
        const GroupElementDiag rebuilt = coset_section(p.Z) * dressing;
        t.add((rebuilt.to_matrix() - g.to_matrix()).max_abs());
    }
    return t;
}

inline ResidualTracker suite_cayley(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix z = sample_cartan(rng, 0.8);
        t.add((cayley(cayley_inv(z)) - z).max_abs());
        const cplx z1 = uniform_complex(rng, 0.8);
        t.add(std::abs(cayley1(cayley1_inv(z1)) - z1));

        const cplx w1 = cayley1_inv(z1);
        const cplx w2 = cayley1_inv(uniform_complex(rng, 0.8));
        const auto pref = [&](cplx w) {
            return std::ldexp(1.0, 2 * cfg.lambda) *
                   ipow(1.0 / (1.0 - cplx(0, 1) * w), 2 * cfg.lambda);
        };
        t.add(std::abs(halfplane_kernel(cfg.lambda, w1, w2) -
                       std::conj(pref(w1)) * pref(w2) *
                           disk_kernel(cfg.lambda, cayley1(w1), cayley1(w2))));
    }
    for (int trial = 0; trial < 15; ++trial) {
        const GroupElementOffdiag f = exp_element(sample_lie_params(rng, 0.4));
        const ComplexMatrix w = cayley_inv(sample_cartan(rng, 0.6));
        t.add((cayley(act_tube(f, w)) -
               act_cartan(upsilon(f).inverse(), cayley(w))).max_abs());
    }
    for (int trial = 0; trial < 10; ++trial) {  // hermitian boundary maps to unitaries
        RealFour x;
        for (double& c : x) c = 2.0 * std::uniform_real_distribution<double>(-1, 1)(rng);
        const ComplexMatrix u = cayley(pauli_combination(lower_index(x)));
        t.add((u * u.adjoint() - ComplexMatrix::identity(2)).max_abs());
    }
    return t;
}

inline ResidualTracker suite_ortho(const SuiteConfig& cfg) {
    ResidualTracker t;
    const auto gram = gram_matrix(cfg.lambda, cfg.degree, QuadratureSpec{});
    for (std::size_t a = 0; a < gram.size(); ++a)
        for (std::size_t b = 0; b < gram.size(); ++b)
            t.add(std::abs(gram[a][b] - (a == b ? 1.0 : 0.0)));
    return t;
}

inline ResidualTracker suite_kernel(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    const double radius = 0.5 / std::sqrt(2.0);
    for (int trial = 0; trial < 12; ++trial) {
        const ComplexMatrix z = sample_cartan(rng, radius);
        const ComplexMatrix zp = sample_cartan(rng, radius);
        const cplx want = bergman_kernel(cfg.lambda, z, zp);
        t.add(std::abs(bergman_series(cfg.lambda, z, zp, {cfg.degree}) - want) /
              std::abs(want));

        // tube kernel pulls back through the transfer prefactor
        const ComplexMatrix w = cayley_inv(z);
        const ComplexMatrix wp = cayley_inv(zp);
        const auto pref = [&](const ComplexMatrix& v) {
            return std::ldexp(1.0, 2 * cfg.lambda) *
                   ipow(1.0 / (ComplexMatrix::identity(2) - cplx(0, 1) * v).det(),
                        cfg.lambda);
        };
        const cplx tube = tube_kernel(cfg.lambda, w, wp);
        t.add(std::abs(tube - std::conj(pref(w)) * pref(wp) * want) / std::abs(tube));
    }
    return t;
}

inline ResidualTracker suite_frame(const SuiteConfig& cfg) {
    ResidualTracker t;
    const QuadratureSpec spec;
    const double cpsi = admissibility_constant(cfg.lambda);
    const BasisIndex ground{HalfInt::from_twice(0), 0, HalfInt::from_twice(0),
                            HalfInt::from_twice(0)};
    const BasisIndex d1{HalfInt::from_twice(1), 0, HalfInt::from_twice(1),
                        HalfInt::from_twice(-1)};
    const BasisIndex d1b{HalfInt::from_twice(1), 0, HalfInt::from_twice(1),
                         HalfInt::from_twice(1)};
    const BasisIndex d2{HalfInt::from_twice(0), 1, HalfInt::from_twice(0),
                        HalfInt::from_twice(0)};
    for (const BasisIndex& ix : {ground, d1, d2})
        t.add(std::abs(frame_element(cfg.lambda, ix, ix, spec) - cpsi) / cpsi);
    t.add(std::abs(frame_element(cfg.lambda, d1, d1b, spec)) / cpsi);
    t.add(std::abs(frame_element(cfg.lambda, ground, d2, spec)) / cpsi);
    return t;
}

inline ResidualTracker suite_recon(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    CoeffVector v;
    for (const auto& ix : basis_indices(cfg.degree)) v.set(ix, cplx(coef(rng), coef(rng)));
    const WaveletCoefficients wc = analyze(cfg.lambda, v);
    const Evaluable direct = v.evaluable(cfg.lambda);
    const QuadratureSpec spec;
    for (int p = 0; p < 10; ++p) {
        const ComplexMatrix z = sample_cartan(rng, 0.8);
        const cplx want = direct(z);
        t.add(std::abs(synthesize(cfg.lambda, wc, z, spec) - want) /
              std::max(1.0, std::abs(want)));
    }
    // single-term analysis keeps the closed form visible
    CoeffVector one;
    const BasisIndex ix{HalfInt::from_twice(1), 1, HalfInt::from_twice(1),
                        HalfInt::from_twice(-1)};
    one.set(ix, cplx(0.7, -0.2));
    const WaveletCoefficients single = analyze(cfg.lambda, one);
    const double cpsi = admissibility_constant(cfg.lambda);
    for (int trial = 0; trial < 5; ++trial) {
        const GroupElementDiag g = sample_group(rng, 0.5);
        const cplx want = ipow(1.0 / g.D.det(), cfg.lambda) *
                          basis_fn(cfg.lambda, ix, coset_point(g)) * cplx(0.7, -0.2) / cpsi;
        t.add(std::abs(single(g) - want) / std::max(1e-12, std::abs(want)));
    }
    return t;
}

inline ResidualTracker suite_converge(const SuiteConfig& cfg) {
    ResidualTracker t;
    std::mt19937_64 rng(cfg.seed);
    int bad = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const ComplexMatrix z = sample_cartan(rng, 1.0);
        const ComplexMatrix zt = sample_cartan(rng, 1.0);
        const ComplexMatrix h = z * z.adjoint();
        const bool domain_chain = h.trace().real() < 2.0 && h.det().real() < 1.0 &&
                                  std::norm(z(0, 0)) + std::norm(z(0, 1)) < 1.0 &&
                                  std::norm(z(1, 0)) + std::norm(z(1, 1)) < 1.0;
        if (!domain_chain) ++bad;
        if (!convergence_ok(zt.adjoint() * z)) ++bad;
        t.cases += 2;
    }
    t.worst = bad;
    return t;
}

inline ResidualTracker suite_isometry(const SuiteConfig& cfg) {
    ResidualTracker t;
    const QuadratureSpec spec;
    const std::vector<BasisIndex> list = {
        {HalfInt::from_twice(0), 0, HalfInt::from_twice(0), HalfInt::from_twice(0)},
        {HalfInt::from_twice(1), 0, HalfInt::from_twice(1), HalfInt::from_twice(-1)},
        {HalfInt::from_twice(0), 1, HalfInt::from_twice(0), HalfInt::from_twice(0)},
        {HalfInt::from_twice(2), 0, HalfInt::from_twice(0), HalfInt::from_twice(2)}};
    int done = 0;
    for (std::size_t a = 0; a < list.size() && done < 6; ++a)
        for (std::size_t b = a; b < list.size() && done < 6; ++b, ++done) {
            const Evaluable f = basis_evaluable(cfg.lambda, list[a]);
            const Evaluable g = basis_evaluable(cfg.lambda, list[b]);
            Evaluable ft = to_tube(cfg.lambda, f);
            Evaluable gt = to_tube(cfg.lambda, g);
            // the transfer prefactor cancels inside conj(ft) gt, so the
            // pulled-back integrand keeps the polynomial degrees of f and g
            ft.degree_bound = f.degree_bound;
            gt.degree_bound = g.degree_bound;
            t.add(std::abs(inner_product(cfg.lambda, f, g, spec) -
                           tube_inner_product(cfg.lambda, ft, gt, spec)));
        }
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 50; ++trial) {
        const GroupElementOffdiag f = exp_element(sample_lie_params(rng, 0.4));
        const ComplexMatrix w = cayley_inv(sample_cartan(rng, 0.6));
        const ComplexMatrix z = cayley(w);
        const ComplexMatrix wp = (f.Q.adjoint() * w - f.S.adjoint()) *
                                 (f.R.adjoint() - f.T.adjoint() * w).inverse();
        const cplx lhs =
            ipow((ComplexMatrix::identity(2) - cplx(0, 1) * w).det(), cfg.lambda) *
            ipow(1.0 / (f.R.adjoint() - f.T.adjoint() * w).det(), cfg.lambda) *
            ipow(1.0 / (ComplexMatrix::identity(2) - cplx(0, 1) * wp).det(), cfg.lambda);
        const cplx rhs = multiplier(upsilon(f), z, cfg.lambda);
        t.add(std::abs(lhs - rhs) / std::abs(rhs));
    }
    return t;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
    return {"smt",   "emsmt", "msmt",  "binom", "wigner",   "solid",   "group",
            "cayley", "ortho", "kernel", "frame", "recon", "converge", "isometry"};
}

// Per-suite defaults; the CLI overrides any field set by a flag.
inline SuiteConfig suite_defaults(const std::string& name) {
    SuiteConfig cfg;
    if (name == "smt" || name == "emsmt" || name == "kernel") {
        cfg.tol = 1e-8;
        cfg.degree = 40;
    } else if (name == "msmt") {
        cfg.tol = 1e-6;
        cfg.degree = 18;
    } else if (name == "binom" || name == "converge") {
        cfg.tol = 0.0;
        cfg.degree = 0;
    } else if (name == "wigner" || name == "solid") {
        cfg.tol = 1e-9;
        cfg.degree = 4;
    } else if (name == "group" || name == "cayley") {
        cfg.tol = 1e-9;
        cfg.degree = 0;
    } else if (name == "ortho") {
        cfg.tol = 1e-6;
        cfg.degree = 4;
    } else if (name == "frame") {
        cfg.tol = 1e-9;
        cfg.degree = 2;
    } else if (name == "recon") {
        cfg.tol = 1e-12;
        cfg.degree = 4;
    } else if (name == "isometry") {
        cfg.tol = 1e-6;
        cfg.degree = 4;
    } else {
        throw std::invalid_argument("suite_defaults: unknown suite " + name);
    }
    return cfg;
}

inline SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    using detail::ResidualTracker;
    const auto t0 = std::chrono::steady_clock::now();
    ResidualTracker t;
    if (name == "smt")
        t = detail::suite_smt(cfg);
    else if (name == "emsmt")
        t = detail::suite_emsmt(cfg);
    else if (name == "msmt")
        t = detail::suite_msmt(cfg);
    else if (name == "binom")
        t = detail::suite_binom(cfg);
    else if (name == "wigner")
        t = detail::suite_wigner(cfg);
    else if (name == "solid")
        t = detail::suite_solid(cfg);
    else if (name == "group")
        t = detail::suite_group(cfg);
    else if (name == "cayley")
        t = detail::suite_cayley(cfg);
    else if (name == "ortho")
        t = detail::suite_ortho(cfg);
    else if (name == "kernel")
        t = detail::suite_kernel(cfg);
    else if (name == "frame")
        t = detail::suite_frame(cfg);
    else if (name == "recon")
        t = detail::suite_recon(cfg);
    else if (name == "converge")
        t = detail::suite_converge(cfg);
    else if (name == "isometry")
        t = detail::suite_isometry(cfg);
    else
        throw std::invalid_argument("run_suite: unknown suite " + name);

    SuiteReport rep;
    rep.suite = name;
    rep.cases = t.cases;
    rep.max_residual = t.worst;
    rep.tolerance = cfg.tol;
    rep.pass = t.worst <= cfg.tol;
    rep.seed = cfg.seed;
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

}  // namespace cwlab
