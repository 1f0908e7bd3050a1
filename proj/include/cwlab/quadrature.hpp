#pragma once

// Deterministic quadrature building blocks shared by the 1-D and 4-D layers:
// Gauss-Legendre on [0, 1] plus the half-line and full-line rational maps.
// Angular directions always use the uniform trapezoid rule, which is exact
// for trigonometric polynomials below the node count.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cwlab {

struct QuadRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

// Nodes and weights on [0, 1]; Newton iteration on the Legendre recurrence.
// Exact for polynomials of degree <= 2n - 1.
inline QuadRule1D gauss_legendre01(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre01: need n >= 1");
    QuadRule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = 0.5 * (1.0 - x);  // descending roots fill from the left
        r.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        r.weights[i] = 0.5 * w;
        r.weights[n - 1 - i] = 0.5 * w;
    }
    return r;
}

// t in [0, 1] -> y in [0, inf), y = t/(1-t); weight carries dy/dt = (1-t)^{-2}.
inline QuadRule1D half_line_rule(int n) {
    QuadRule1D r = gauss_legendre01(n);
    for (int i = 0; i < n; ++i) {
        const double t = r.nodes[i];
        r.weights[i] /= (1.0 - t) * (1.0 - t);
        r.nodes[i] = t / (1.0 - t);
    }
    return r;
}

// t in [0, 1] -> x in (-inf, inf), x = tan(pi (t - 1/2)); weight carries dx/dt.
inline QuadRule1D full_line_rule(int n) {
    QuadRule1D r = gauss_legendre01(n);
    for (int i = 0; i < n; ++i) {
        const double u = M_PI * (r.nodes[i] - 0.5);
        const double c = std::cos(u);
        r.weights[i] *= M_PI / (c * c);
        r.nodes[i] = std::tan(u);
    }
    return r;
}

// Uniform angles theta_k = 2 pi k / n with equal weights 2 pi / n.
inline QuadRule1D trapezoid_angles(int n) {
    if (n < 1) throw std::invalid_argument("trapezoid_angles: need n >= 1");
    QuadRule1D r;
    r.nodes.resize(n);
    r.weights.assign(n, 2.0 * M_PI / n);
    for (int i = 0; i < n; ++i) r.nodes[i] = 2.0 * M_PI * i / n;
    return r;
}

// Binary-counter pairwise reduction. The summation tree depends only on the
// order of add() calls, so results are bit-reproducible, and the rounding
// error grows like log(n) instead of n.
class PairwiseSum {
  public:
    void add(std::complex<double> v) {
        std::size_t level = 0;
        for (std::uint64_t c = count_; c & 1; c >>= 1, ++level) v += stack_[level];
        if (level == stack_.size())
            stack_.push_back(v);
        else
            stack_[level] = v;
        ++count_;
    }

    std::complex<double> total() const {
        std::complex<double> s = 0.0;
        for (std::size_t l = 0; l < stack_.size(); ++l)
            if ((count_ >> l) & 1) s += stack_[l];
        return s;
    }

    std::uint64_t count() const { return count_; }

  private:
    std::vector<std::complex<double>> stack_;
    std::uint64_t count_ = 0;
};

}  // namespace cwlab
