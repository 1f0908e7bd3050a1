#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <thread>

#include "cwlab/suites.hpp"

using nlohmann::json;

namespace {

// Upper bound on worker parallelism; execution never exceeds it. The current
// evaluators run one worker with a fixed reduction order, so any cap >= 1
// leaves results bit-identical.
int thread_budget() {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("CWLAB_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1 && requested < cap) cap = requested;
    }
    return cap;
}

struct KernelArgs {
    int lambda = 4;
    std::string domain = "cartan";
    double anchor_re = 0.0;
    double anchor_im = 0.0;
    bool anchor_im_set = false;
    double re0 = -0.65, re1 = 0.65, im0 = -0.65, im1 = 0.65;
    bool im_set = false;
    int nre = 33, nim = 33;
    std::string out;
};

struct SliceArgs {
    int lambda = 1;
    double xmin = -8.0, xmax = 8.0, ymin = 0.05, ymax = 4.0;
    int nx = 161, ny = 80;
    std::string out;
};

struct TransformArgs {
    std::string input;
    std::string action = "analyze";
    int samples = 20;
    std::uint64_t seed = 20140305;
    double spread = 0.3;
    double tol = 0.0;
    std::string out;
};

int cmd_verify(const std::string& name, const cwlab::SuiteConfig& cfg, bool as_json) {
    const cwlab::SuiteReport rep = cwlab::run_suite(name, cfg);
    if (as_json) {
        json j{{"suite", rep.suite},
               {"lambda", cfg.lambda},
               {"seed", rep.seed},
               {"tol", rep.tolerance},
               {"degree", cfg.degree},
               {"cases", rep.cases},
               {"max_residual", rep.max_residual},
               {"pass", rep.pass},
               {"wall_ms", rep.wall_ms},
               {"nodes", json{{"radial", cwlab::QuadratureSpec{}.radial_nodes},
                              {"angular", cwlab::QuadratureSpec{}.angular_nodes}}},
               {"mc_samples", cwlab::QuadratureSpec{}.mc_samples},
               {"threads", thread_budget()}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("suite=%s lambda=%d seed=%llu degree=%d cases=%d max_residual=%.3e "
                    "tol=%.3e wall_ms=%.0f %s\n",
                    rep.suite.c_str(), cfg.lambda,
                    static_cast<unsigned long long>(rep.seed), cfg.degree, rep.cases,
                    rep.max_residual, rep.tolerance, rep.wall_ms,
                    rep.pass ? "PASS" : "FAIL");
    }
    return rep.pass ? 0 : 1;
}

int cmd_kernel(const KernelArgs& a) {
    using namespace cwlab;
    const bool tube = a.domain == "tube";
    if (!tube && a.domain != "cartan")
        throw std::invalid_argument("kernel: domain must be cartan or tube");
    const double are = a.anchor_re;
    const double aim = a.anchor_im_set ? a.anchor_im : (tube ? 1.0 : 0.0);
    const double im0 = a.im_set ? a.im0 : (tube ? 0.2 : -0.65);
    const double im1 = a.im_set ? a.im1 : (tube ? 2.2 : 0.65);
    if (a.nre < 1 || a.nim < 1) throw std::invalid_argument("kernel: grid counts must be >= 1");

    const ComplexMatrix eye = ComplexMatrix::identity(2);
    const ComplexMatrix anchor = cplx(are, aim) * eye;
    if (!is_in_domain(tube ? DomainPoint::tube(anchor) : DomainPoint::cartan(anchor)))
        throw std::invalid_argument("kernel: anchor outside the domain");

    FILE* out = std::fopen(a.out.c_str(), "w");
    if (!out) {
        std::fprintf(stderr, "kernel: cannot open %s\n", a.out.c_str());
        return 1;
    }
    std::fprintf(out, "# kernel domain=%s lambda=%d anchor_re=%.17g anchor_im=%.17g\n",
                 a.domain.c_str(), a.lambda, are, aim);
    std::fprintf(out, "# grid re=[%.17g,%.17g]x%d im=[%.17g,%.17g]x%d row-major im-outer; "
                 "points on the scalar slice c*I, off-domain points skipped\n",
                 a.re0, a.re1, a.nre, im0, im1, a.nim);
    std::fprintf(out, "# re(c), im(c), re(K), im(K)\n");
    for (int iy = 0; iy < a.nim; ++iy)
        for (int ix = 0; ix < a.nre; ++ix) {
            const double x = a.nre == 1 ? a.re0 : a.re0 + (a.re1 - a.re0) * ix / (a.nre - 1);
            const double y = a.nim == 1 ? im0 : im0 + (im1 - im0) * iy / (a.nim - 1);
            const ComplexMatrix pt = cplx(x, y) * eye;
            if (!is_in_domain(tube ? DomainPoint::tube(pt) : DomainPoint::cartan(pt)))
                continue;
            const cplx k = tube ? tube_kernel(a.lambda, pt, anchor)
                                : bergman_kernel(a.lambda, pt, anchor);
            std::fprintf(out, "%.17g, %.17g, %.17g, %.17g\n", x, y, k.real(), k.imag());
        }
    std::fclose(out);
    return 0;
}

int cmd_wavelet_slice(const SliceArgs& a) {
    const auto rows = cwlab::mother_slice(a.lambda, a.xmin, a.xmax, a.ymin, a.ymax, a.nx, a.ny);
    FILE* out = std::fopen(a.out.c_str(), "w");
    if (!out) {
        std::fprintf(stderr, "wavelet-slice: cannot open %s\n", a.out.c_str());
        return 1;
    }
    std::fprintf(out, "# mother wavelet slice lambda=%d x=[%.17g,%.17g]x%d "
                 "y=[%.17g,%.17g]x%d row-major y-outer\n",
                 a.lambda, a.xmin, a.xmax, a.nx, a.ymin, a.ymax, a.ny);
    std::fprintf(out, "# x, y, abs, arg\n");
    for (const auto& r : rows)
        std::fprintf(out, "%.17g, %.17g, %.17g, %.17g\n", r.x, r.y, r.modulus, r.phase);
    std::fclose(out);
    return 0;
}

cwlab::CoeffVector parse_coefficients(const std::string& path, int& lambda) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("transform: cannot open " + path);
    json j;
    in >> j;
    lambda = j.at("lambda").get<int>();
    cwlab::CoeffVector v;
    for (const json& term : j.at("terms")) {
        const cwlab::BasisIndex idx{
            cwlab::HalfInt::from_twice(term.at("j2").get<int>()), term.at("m").get<int>(),
            cwlab::HalfInt::from_twice(term.at("q1_2").get<int>()),
            cwlab::HalfInt::from_twice(term.at("q2_2").get<int>())};
        v.set(idx, cwlab::cplx(term.at("re").get<double>(), term.at("im").get<double>()));
    }
    return v;
}

int cmd_transform(const TransformArgs& a) {
    using namespace cwlab;
    int lambda = 4;
    const CoeffVector v = parse_coefficients(a.input, lambda);
    const WaveletCoefficients wc = analyze(lambda, v);
    std::mt19937_64 rng(a.seed);

    json out;
    out["lambda"] = lambda;
    out["seed"] = a.seed;
    out["samples"] = a.samples;
    out["action"] = a.action;
    json points = json::array();
    double max_err = 0.0;

    if (a.action == "analyze") {
        out["spread"] = a.spread;
        for (int k = 0; k < a.samples; ++k) {
            const LieParams lp = sample_lie_params(rng, a.spread);
            const cplx val = wc(upsilon(exp_element(lp)));
            points.push_back(json{
                {"lie_params",
                 json{{"tau", lp.tau},
                      {"b", json{lp.b[0], lp.b[1], lp.b[2], lp.b[3]}},
                      {"c", json{lp.c[0], lp.c[1], lp.c[2], lp.c[3]}},
                      {"omega", json{lp.omega[0], lp.omega[1], lp.omega[2], lp.omega[3],
                                     lp.omega[4], lp.omega[5]}}}},
                {"value", json{{"re", val.real()}, {"im", val.imag()}}}});
        }
    } else if (a.action == "roundtrip") {
        const Evaluable direct = v.evaluable(lambda);
        const QuadratureSpec spec;
        for (int k = 0; k < a.samples; ++k) {
            const ComplexMatrix z = sample_cartan(rng, 0.8);
            const double err = std::abs(synthesize(lambda, wc, z, spec) - direct(z));
            max_err = std::max(max_err, err);
            json zrow = json::array();
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k)
                    zrow.push_back(json::array({z(i, k).real(), z(i, k).imag()}));
            json rec;
            rec["z"] = zrow;
            rec["err"] = err;
            points.push_back(rec);
        }
        out["max_err"] = max_err;
    } else {
        throw std::invalid_argument("transform: action must be analyze or roundtrip");
    }
    out["points"] = points;

    if (a.out.empty()) {
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::ofstream f(a.out);
        if (!f) {
            std::fprintf(stderr, "transform: cannot open %s\n", a.out.c_str());
            return 1;
        }
        f << out.dump(2) << '\n';
    }
    if (a.action == "roundtrip" && a.tol > 0.0 && max_err > a.tol) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformal wavelet laboratory"};
    app.require_subcommand(1);

    // verify
    std::string suite;
    bool as_json = false;
    bool lambda_set = false, tol_set = false, degree_set = false, seed_set = false;
    int lambda = 4, degree = 0;
    double tol = 0.0;
    std::uint64_t seed = 20140305;
    CLI::App* verify = app.add_subcommand("verify", "Run a named invariant suite");
    verify->add_option("suite", suite, "One of: smt emsmt msmt binom wigner solid group "
                                       "cayley ortho kernel frame recon converge isometry")
        ->required();
    verify->add_option("--lambda", lambda, "Representation weight")->each([&](std::string) {
        lambda_set = true;
    });
    verify->add_option("--tol", tol, "Pass threshold on the max residual")
        ->each([&](std::string) { tol_set = true; });
    verify->add_option("--degree", degree, "Truncation or basis degree")
        ->each([&](std::string) { degree_set = true; });
    verify->add_option("--seed", seed, "RNG seed")->each([&](std::string) { seed_set = true; });
    verify->add_flag("--json", as_json, "Emit a JSON report on stdout");

    // kernel
    KernelArgs ka;
    CLI::App* kernel = app.add_subcommand("kernel", "Export a reproducing-kernel slice");
    kernel->add_option("--lambda", ka.lambda, "Representation weight");
    kernel->add_option("--domain", ka.domain, "cartan or tube");
    kernel->add_option("--anchor-re", ka.anchor_re, "Anchor scalar, real part");
    kernel->add_option("--anchor-im", ka.anchor_im, "Anchor scalar, imaginary part")
        ->each([&](std::string) { ka.anchor_im_set = true; });
    kernel->add_option("--re0", ka.re0, "Grid start, real axis");
    kernel->add_option("--re1", ka.re1, "Grid end, real axis");
    kernel->add_option("--im0", ka.im0, "Grid start, imaginary axis")
        ->each([&](std::string) { ka.im_set = true; });
    kernel->add_option("--im1", ka.im1, "Grid end, imaginary axis")
        ->each([&](std::string) { ka.im_set = true; });
    kernel->add_option("--nre", ka.nre, "Grid count, real axis");
    kernel->add_option("--nim", ka.nim, "Grid count, imaginary axis");
    kernel->add_option("--out", ka.out, "Output CSV path")->required();

    // wavelet-slice
    SliceArgs sa;
    CLI::App* slice = app.add_subcommand("wavelet-slice",
                                         "Export the mother wavelet on the scalar tube slice");
    slice->add_option("--lambda", sa.lambda, "Representation weight");
    slice->add_option("--xmin", sa.xmin, "Slice window");
    slice->add_option("--xmax", sa.xmax, "Slice window");
    slice->add_option("--ymin", sa.ymin, "Slice window, must stay positive");
    slice->add_option("--ymax", sa.ymax, "Slice window");
    slice->add_option("--nx", sa.nx, "Grid count, x axis");
    slice->add_option("--ny", sa.ny, "Grid count, y axis");
    slice->add_option("--out", sa.out, "Output CSV path")->required();

    // transform
    TransformArgs ta;
    CLI::App* transform = app.add_subcommand("transform", "Wavelet analysis demo");
    transform->add_option("--input", ta.input, "Coefficient JSON file")->required();
    transform->add_option("--action", ta.action, "analyze or roundtrip");
    transform->add_option("--samples", ta.samples, "Number of sampled points");
    transform->add_option("--seed", ta.seed, "RNG seed");
    transform->add_option("--spread", ta.spread, "Group sampling spread (analyze)");
    transform->add_option("--tol", ta.tol, "Roundtrip failure threshold (0 disables)");
    transform->add_option("--out", ta.out, "Output JSON path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) {
            cwlab::SuiteConfig cfg = cwlab::suite_defaults(suite);
            if (lambda_set) cfg.lambda = lambda;
            if (tol_set) cfg.tol = tol;
            if (degree_set) cfg.degree = degree;
            if (seed_set) cfg.seed = seed;
            return cmd_verify(suite, cfg, as_json);
        }
        if (*kernel) return cmd_kernel(ka);
        if (*slice) return cmd_wavelet_slice(sa);
        if (*transform) return cmd_transform(ta);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
