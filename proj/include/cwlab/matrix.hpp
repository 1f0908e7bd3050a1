#pragma once

// Small dense complex matrices (square, any N; inline storage through N = 4)
// plus the domain-membership and principal-minor-sum primitives.

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <vector>

namespace cwlab {

using cplx = std::complex<double>;

class ComplexMatrix {
  public:
    ComplexMatrix() : n_(1) {}
    explicit ComplexMatrix(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
        if (n > 4) big_.assign(static_cast<size_t>(n) * n, cplx(0.0));
    }
    // Row-major entries.
    ComplexMatrix(int n, std::initializer_list<cplx> entries) : ComplexMatrix(n) {
        if (static_cast<int>(entries.size()) != n * n)
            throw std::invalid_argument("ComplexMatrix: wrong entry count");
        int k = 0;
        for (const cplx& v : entries) data()[k++] = v;
        require_finite();
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix zero(int n) { return ComplexMatrix(n); }

    int dim() const { return n_; }
    cplx& operator()(int i, int j) { return data()[i * n_ + j]; }
    const cplx& operator()(int i, int j) const { return data()[i * n_ + j]; }

    bool is_finite() const {
        for (int k = 0; k < n_ * n_; ++k)
            if (!std::isfinite(data()[k].real()) || !std::isfinite(data()[k].imag())) return false;
        return true;
    }
    void require_finite() const {
        if (!is_finite()) throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        check_dim(o);
        ComplexMatrix r(n_);
        for (int k = 0; k < n_ * n_; ++k) r.data()[k] = data()[k] + o.data()[k];
        return r;
    }
    ComplexMatrix operator-(const ComplexMatrix& o) const {
        check_dim(o);
        ComplexMatrix r(n_);
        for (int k = 0; k < n_ * n_; ++k) r.data()[k] = data()[k] - o.data()[k];
        return r;
    }
    ComplexMatrix operator-() const {
        ComplexMatrix r(n_);
        for (int k = 0; k < n_ * n_; ++k) r.data()[k] = -data()[k];
        return r;
    }
    ComplexMatrix operator*(const ComplexMatrix& o) const {
        check_dim(o);
        ComplexMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const cplx a = (*this)(i, k);
                if (a == 0.0) continue;
                for (int j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }
    ComplexMatrix operator*(const cplx& s) const {
        ComplexMatrix r(n_);
        for (int k = 0; k < n_ * n_; ++k) r.data()[k] = data()[k] * s;
        return r;
    }
    friend ComplexMatrix operator*(const cplx& s, const ComplexMatrix& m) { return m * s; }

    ComplexMatrix transpose() const {
        ComplexMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    ComplexMatrix conjugate() const {
        ComplexMatrix r(n_);
        for (int k = 0; k < n_ * n_; ++k) r.data()[k] = std::conj(data()[k]);
        return r;
    }
    ComplexMatrix adjoint() const { return conjugate().transpose(); }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    // Cofactor/explicit formulas through N = 4, LU with partial pivoting beyond.
    cplx det() const {
        const ComplexMatrix& m = *this;
        switch (n_) {
            case 1: return m(0, 0);
            case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            case 3:
                return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                       m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                       m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            case 4: {
                cplx d = 0.0;
                double sign = 1.0;
                for (int j = 0; j < 4; ++j) {
                    d += sign * m(0, j) * minor3(0, j);
                    sign = -sign;
                }
                return d;
            }
            default: return det_lu();
        }
    }

    ComplexMatrix inverse() const {
        if (n_ == 1) {
            if ((*this)(0, 0) == 0.0) throw std::domain_error("inverse: singular");
            ComplexMatrix r(1);
            r(0, 0) = 1.0 / (*this)(0, 0);
            return r;
        }
        if (n_ == 2) {
            const cplx d = det();
            if (std::abs(d) == 0.0) throw std::domain_error("inverse: singular");
            ComplexMatrix r(2);
            r(0, 0) = (*this)(1, 1) / d;
            r(0, 1) = -(*this)(0, 1) / d;
            r(1, 0) = -(*this)(1, 0) / d;
            r(1, 1) = (*this)(0, 0) / d;
            return r;
        }
        return inverse_gauss();
    }

    double max_abs() const {
        double m = 0.0;
        for (int k = 0; k < n_ * n_; ++k) m = std::max(m, std::abs(data()[k]));
        return m;
    }
    double frobenius_norm() const {
        double s = 0.0;
        for (int k = 0; k < n_ * n_; ++k) s += std::norm(data()[k]);
        return std::sqrt(s);
    }

    ComplexMatrix principal_submatrix(unsigned mask) const {
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        ComplexMatrix r(static_cast<int>(idx.size() == 0 ? 1 : idx.size()));
        if (idx.empty()) {
            r(0, 0) = 1.0;  // unused; callers treat the empty minor as 1
            return r;
        }
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = (*this)(idx[i], idx[j]);
        return r;
    }

  private:
    int n_;
    std::array<cplx, 16> small_{};
    std::vector<cplx> big_;

    cplx* data() { return n_ <= 4 ? small_.data() : big_.data(); }
    const cplx* data() const { return n_ <= 4 ? small_.data() : big_.data(); }
    void check_dim(const ComplexMatrix& o) const {
        if (o.n_ != n_) throw std::invalid_argument("ComplexMatrix: dim mismatch");
    }

    cplx minor3(int row, int col) const {
        int r[3], c[3], ri = 0, ci = 0;
        for (int i = 0; i < 4; ++i)
            if (i != row) r[ri++] = i;
        for (int j = 0; j < 4; ++j)
            if (j != col) c[ci++] = j;
        const ComplexMatrix& m = *this;
        return m(r[0], c[0]) * (m(r[1], c[1]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[1])) -
               m(r[0], c[1]) * (m(r[1], c[0]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[0])) +
               m(r[0], c[2]) * (m(r[1], c[0]) * m(r[2], c[1]) - m(r[1], c[1]) * m(r[2], c[0]));
    }

    cplx det_lu() const {
        ComplexMatrix a(*this);
        cplx d = 1.0;
        for (int k = 0; k < n_; ++k) {
            int piv = k;
            for (int i = k + 1; i < n_; ++i)
                if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
            if (piv != k) {
                for (int j = 0; j < n_; ++j) std::swap(a(k, j), a(piv, j));
                d = -d;
            }
            if (a(k, k) == 0.0) return 0.0;
            d *= a(k, k);
            for (int i = k + 1; i < n_; ++i) {
                const cplx f = a(i, k) / a(k, k);
                for (int j = k; j < n_; ++j) a(i, j) -= f * a(k, j);
            }
        }
        return d;
    }

    ComplexMatrix inverse_gauss() const {
        ComplexMatrix a(*this);
        ComplexMatrix inv = identity(n_);
        for (int k = 0; k < n_; ++k) {
            int piv = k;
            for (int i = k + 1; i < n_; ++i)
                if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
            if (std::abs(a(piv, k)) == 0.0) throw std::domain_error("inverse: singular");
            if (piv != k)
                for (int j = 0; j < n_; ++j) {
                    std::swap(a(k, j), a(piv, j));
                    std::swap(inv(k, j), inv(piv, j));
                }
            const cplx p = a(k, k);
            for (int j = 0; j < n_; ++j) {
                a(k, j) /= p;
                inv(k, j) /= p;
            }
            for (int i = 0; i < n_; ++i) {
                if (i == k) continue;
                const cplx f = a(i, k);
                if (f == 0.0) continue;
                for (int j = 0; j < n_; ++j) {
                    a(i, j) -= f * a(k, j);
                    inv(i, j) -= f * inv(k, j);
                }
            }
        }
        return inv;
    }
};

// T_0 .. T_N with T_q = sum of all principal q x q minors; direct subset
// enumeration (2^N terms, N is small). T_0 = 1, T_1 = tr, T_N = det, and
// det(I - X) = sum_q (-1)^q T_q(X).
inline std::vector<cplx> principal_minor_sums(const ComplexMatrix& x) {
    const int n = x.dim();
    if (n > 24) throw std::invalid_argument("principal_minor_sums: dim too large");
    std::vector<cplx> t(static_cast<size_t>(n) + 1, cplx(0.0));
    t[0] = 1.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int q = std::popcount(mask);
        t[q] += x.principal_submatrix(mask).det();
    }
    return t;
}

// Eigenvalues (lo, hi) of a 2x2 hermitian matrix, closed form.
inline std::pair<double, double> hermitian_eigs_2x2(const ComplexMatrix& h) {
    if (h.dim() != 2) throw std::invalid_argument("hermitian_eigs_2x2: dim != 2");
    const double tr = h(0, 0).real() + h(1, 1).real();
    const double dt = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr * 0.25 - dt));
    return {tr * 0.5 - disc, tr * 0.5 + disc};
}

// Eigenvalues of I - ZZ^dag via rho_pm = (2 - tr(ZZ^dag) +- sqrt(D))/2,
// D = tr(ZZ^dag)^2 - 4 det(ZZ^dag). Returned as (rho_plus, rho_minus).
inline std::pair<double, double> eigen_bounds(const ComplexMatrix& z) {
    if (z.dim() != 2) throw std::invalid_argument("eigen_bounds: dim != 2");
    double tr = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) tr += std::norm(z(i, j));
    const double dt = std::norm(z.det());  // det(ZZ^dag) = |det Z|^2
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * dt));
    return {(2.0 - tr + disc) * 0.5, (2.0 - tr - disc) * 0.5};
}

enum class DomainKind { CartanD4, Tube4, Disk1, HalfPlane1 };

struct DomainPoint {
    DomainKind kind;
    ComplexMatrix mat;  // CartanD4 / Tube4
    cplx scalar;        // Disk1 / HalfPlane1

    static DomainPoint cartan(const ComplexMatrix& z) { return {DomainKind::CartanD4, z, 0.0}; }
    static DomainPoint tube(const ComplexMatrix& w) { return {DomainKind::Tube4, w, 0.0}; }
    static DomainPoint disk(cplx z) { return {DomainKind::Disk1, ComplexMatrix(1), z}; }
    static DomainPoint half_plane(cplx w) { return {DomainKind::HalfPlane1, ComplexMatrix(1), w}; }
};

// Strict membership; points within 1e-14 of the boundary are rejected
// (downstream series converge only in the open domain).
inline constexpr double kBoundaryMargin = 1e-14;

inline bool is_in_domain(const DomainPoint& p) {
    switch (p.kind) {
        case DomainKind::CartanD4: {
            if (p.mat.dim() != 2) throw std::invalid_argument("is_in_domain: CartanD4 needs 2x2");
            return eigen_bounds(p.mat).second > kBoundaryMargin;
        }
        case DomainKind::Tube4: {
            if (p.mat.dim() != 2) throw std::invalid_argument("is_in_domain: Tube4 needs 2x2");
            const ComplexMatrix y = (p.mat - p.mat.adjoint()) * cplx(0.0, -0.5);
            return hermitian_eigs_2x2(y).first > kBoundaryMargin;
        }
        case DomainKind::Disk1: return 1.0 - std::norm(p.scalar) > kBoundaryMargin;
        case DomainKind::HalfPlane1: return p.scalar.imag() > kBoundaryMargin;
    }
    return false;
}

// Square root of a positive semidefinite 2x2 hermitian matrix, closed form:
// sqrt(H) = (H + sqrt(det H) I) / sqrt(tr H + 2 sqrt(det H)).
inline ComplexMatrix hermitian_sqrt_2x2(const ComplexMatrix& h) {
    if (h.dim() != 2) throw std::invalid_argument("hermitian_sqrt_2x2: dim != 2");
    const double tr = h(0, 0).real() + h(1, 1).real();
    const double dt = std::max(0.0, (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real());
    const double s = std::sqrt(dt);
    const double t = tr + 2.0 * s;
    if (t <= 0.0) {
        if (std::abs(tr) < 1e-300) return ComplexMatrix::zero(2);
        throw std::domain_error("hermitian_sqrt_2x2: not positive semidefinite");
    }
    return (h + ComplexMatrix::identity(2) * cplx(s)) * cplx(1.0 / std::sqrt(t));
}

inline ComplexMatrix hermitian_inv_sqrt_2x2(const ComplexMatrix& h) {
    return hermitian_sqrt_2x2(h).inverse();
}

inline cplx uniform_complex(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z) <= radius) return z;
    }
}

// Uniform (Lebesgue) sample of the Cartan domain by rejection from the unit
// polydisc, optionally scaled to a deep-interior radius.
inline ComplexMatrix sample_cartan(std::mt19937_64& rng, double radius = 1.0) {
    for (;;) {
        ComplexMatrix z(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) z(i, j) = uniform_complex(rng, radius);
        if (is_in_domain(DomainPoint::cartan(z))) return z;
    }
}

}  // namespace cwlab
