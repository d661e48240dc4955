// mat_core.hpp
// Dense complex matrices, Hermitian eigensolving, Cholesky factorization,
// Kronecker products and partial transposition. Everything is sized for
// small bipartite problems (side <= 64, typically 9), so all storage is
// dense and all operations are plain loops.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace witnesskit {

using Complex = std::complex<double>;

/// Thrown when the Jacobi eigensolver fails to reach its off-diagonal
/// target within the sweep cap. Carries the remaining off-diagonal norm.
struct EigNoConvergence : std::runtime_error {
    double offdiag_norm;
    explicit EigNoConvergence(double off)
        : std::runtime_error("hermitian eigensolver did not converge; "
                             "off-diagonal norm " + std::to_string(off)),
          offdiag_norm(off) {}
};

/// Thrown by cholesky() when a pivot falls below the PSD tolerance.
struct NotPositiveSemidefinite : std::runtime_error {
    double pivot;
    explicit NotPositiveSemidefinite(double p)
        : std::runtime_error("matrix is not positive semidefinite; "
                             "pivot " + std::to_string(p)),
          pivot(p) {}
};

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

/// Dense row-major complex matrix. Immutable use is the norm: operations
/// return new values. Entries are validated to be finite on construction
/// from data.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("entry count does not match dimensions");
        }
        require_finite();
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Matrix unit E_ij (1 at (i,j), 0 elsewhere).
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
        ComplexMatrix m(n, n);
        m(i, j) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        require_same_shape(o);
        ComplexMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
        return r;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        require_same_shape(o);
        ComplexMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
        return r;
    }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        ComplexMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex a = (*this)(i, k);
                if (a == Complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    r(i, j) += a * o(k, j);
                }
            }
        }
        return r;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
        ComplexMatrix r(m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.data_.size(); ++k) r.data_[k] = s * m.data_[k];
        return r;
    }

    friend ComplexMatrix operator*(double s, const ComplexMatrix& m) {
        return Complex{s, 0.0} * m;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = std::conj(data_[k]);
        return r;
    }

    ComplexMatrix adjoint() const { return conjugate().transpose(); }

    Complex trace() const {
        if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    /// max_ij |a_ij - conj(a_ji)|; 0 for exactly Hermitian matrices.
    double hermiticity_defect() const {
        if (!is_square()) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    void require_finite() const {
        for (const Complex& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("matrix entry is not finite");
        }
    }

    std::size_t rows_, cols_;
    std::vector<Complex> data_;
};

// ---------------------------------------------------------------------------
// HermitianMatrix
// ---------------------------------------------------------------------------

inline constexpr double kHermitianTol = 1e-12;

/// A square matrix certified Hermitian at construction
/// (max-entry defect <= 1e-12).
class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
        if (!m_.is_square()) throw std::invalid_argument("Hermitian matrix must be square");
        if (m_.hermiticity_defect() > kHermitianTol)
            throw std::invalid_argument("matrix is not Hermitian within tolerance");
    }

    std::size_t side() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    double trace_real() const { return m_.trace().real(); }

private:
    ComplexMatrix m_;
};

// ---------------------------------------------------------------------------
// Hermitian eigenvalues (cyclic Jacobi)
// ---------------------------------------------------------------------------

namespace detail {

inline double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi rotations;
/// converged when the off-diagonal Frobenius norm drops below
/// 1e-13 * ||h||_F, capped at 100 sweeps. Side is limited to 64.
inline std::vector<double> eigvals_hermitian(const HermitianMatrix& h) {
    const std::size_t n = h.side();
    if (n > 64) throw std::invalid_argument("eigensolver supports side <= 64");
    if (n == 0) return {};
    if (n == 1) return {h(0, 0).real()};

    ComplexMatrix a = h.matrix();
    const double target = 1e-13 * a.frobenius_norm();
    const int max_sweeps = 100;

    double off = detail::offdiag_frobenius(a);
    int sweep = 0;
    while (off > target) {
        if (sweep++ >= max_sweeps) throw EigNoConvergence(off);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const Complex phase = apq / r;  // apq = r * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Rotation angle for the phase-reduced real 2x2 block.
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary G: G_pp = c, G_pq = s, G_qp = -s*conj(phase),
                // G_qq = c*conj(phase); A <- G^dag A G.
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip + gqp * aiq;
                    a(i, q) = s * aip + gqq * aiq;
                    a(p, i) = std::conj(a(i, p));
                    a(q, i) = std::conj(a(i, q));
                }
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
        off = detail::offdiag_frobenius(a);
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline double min_eigval(const HermitianMatrix& h) {
    return eigvals_hermitian(h).front();
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// Unit-trace PSD Hermitian matrix with bipartite dimension metadata.
class DensityMatrix {
public:
    DensityMatrix(HermitianMatrix m, std::pair<std::size_t, std::size_t> dims,
                  double tol = 1e-10)
        : m_(std::move(m)), dims_(dims), tol_(tol) {
        if (dims_.first * dims_.second != m_.side())
            throw std::invalid_argument("subsystem dimensions do not match matrix side");
        if (std::abs(m_.trace_real() - 1.0) > 1e-10)
            throw std::invalid_argument("density matrix trace is not 1");
        if (min_eigval(m_) < -tol_)
            throw std::invalid_argument("density matrix is not positive semidefinite");
    }

    std::size_t side() const { return m_.side(); }
    std::pair<std::size_t, std::size_t> dims() const { return dims_; }
    double tol() const { return tol_; }
    const HermitianMatrix& hermitian() const { return m_; }
    const ComplexMatrix& matrix() const { return m_.matrix(); }

private:
    HermitianMatrix m_;
    std::pair<std::size_t, std::size_t> dims_;
    double tol_;
};

// ---------------------------------------------------------------------------
// UpperTriangular
// ---------------------------------------------------------------------------

/// Square matrix with exact zeros below the diagonal.
class UpperTriangular {
public:
    explicit UpperTriangular(std::size_t side) : m_(side, side) {}

    explicit UpperTriangular(ComplexMatrix m) : m_(std::move(m)) {
        if (!m_.is_square()) throw std::invalid_argument("upper triangular matrix must be square");
        for (std::size_t i = 0; i < m_.rows(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (m_(i, j) != Complex{0.0, 0.0})
                    throw std::invalid_argument("nonzero entry below the diagonal");
    }

    std::size_t side() const { return m_.rows(); }

    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    void set(std::size_t i, std::size_t j, Complex v) {
        if (j < i) throw std::invalid_argument("cannot set entry below the diagonal");
        m_(i, j) = v;
    }

    const ComplexMatrix& matrix() const { return m_; }

    /// T^dag * T (the factored PSD matrix).
    ComplexMatrix gram() const { return m_.adjoint() * m_; }

private:
    ComplexMatrix m_;
};

// ---------------------------------------------------------------------------
// Kronecker product, partial transpose, PPT test
// ---------------------------------------------------------------------------

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex s = a(i, j);
            if (s == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
        }
    return r;
}

enum class PtSide { second, first };

/// Partial transpose of a bipartite matrix with subsystem dims (d_a, d_b).
/// Default transposes the second factor: each d_b x d_b block of the
/// d_a x d_a block grid is transposed in place. Entry rearrangement only,
/// so the trace is preserved bitwise and the operation is an involution.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                       std::pair<std::size_t, std::size_t> dims,
                                       PtSide side = PtSide::second) {
    const auto [da, db] = dims;
    if (da * db != m.rows() || !m.is_square())
        throw std::invalid_argument("partial transpose: dims do not match matrix");
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < da; ++b)
            for (std::size_t i = 0; i < db; ++i)
                for (std::size_t j = 0; j < db; ++j) {
                    if (side == PtSide::second) {
                        // block (a,b) transposed in place
                        r(a * db + i, b * db + j) = m(a * db + j, b * db + i);
                    } else {
                        // block grid transposed, blocks kept
                        r(a * db + i, b * db + j) = m(b * db + i, a * db + j);
                    }
                }
    return r;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                       PtSide side = PtSide::second) {
    return partial_transpose(rho.matrix(), rho.dims(), side);
}

inline bool is_ppt(const DensityMatrix& rho, double tol = 1e-10) {
    HermitianMatrix pt(partial_transpose(rho));
    return min_eigval(pt) >= -tol;
}

// ---------------------------------------------------------------------------
// Cholesky factorization (rho = T^dag T, T upper triangular)
// ---------------------------------------------------------------------------

/// Cholesky factor in the upper-triangular convention h = T^dag T.
/// Rank-deficient inputs are allowed: pivots in [-1e-10, 0] are clamped to
/// zero (the rest of their column is dropped); a pivot below -1e-10 raises
/// NotPositiveSemidefinite.
inline UpperTriangular cholesky(const HermitianMatrix& h) {
    const std::size_t n = h.side();
    // L is the usual lower factor of h = L L^dag; T = L^dag.
    ComplexMatrix low(n, n);
    double max_diag = 1.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(h(i, i)));
    const double zero_pivot = 1e-12 * max_diag;  // rank-deficiency guard

    for (std::size_t j = 0; j < n; ++j) {
        double d = h(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(low(j, k));
        if (d < -1e-10) throw NotPositiveSemidefinite(d);
        if (d <= zero_pivot) {
            // treat as exact rank deficiency; column stays zero
            continue;
        }
        const double ljj = std::sqrt(d);
        low(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = h(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= low(i, k) * std::conj(low(j, k));
            low(i, j) = s / ljj;
        }
    }
    return UpperTriangular(low.adjoint());
}

}  // namespace witnesskit
