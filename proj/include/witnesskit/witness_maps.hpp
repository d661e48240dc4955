// witness_maps.hpp
// Positive maps on 3x3 matrices represented as superoperators, identity
// extensions to bipartite states, Choi-matrix witness operators and the
// witness trace test.
//
// Vectorization convention: column-stacking, vec(A)[j*n + i] = A(i,j),
// fixed everywhere in this library.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "mat_core.hpp"

namespace witnesskit {

// ---------------------------------------------------------------------------
// Superoperator
// ---------------------------------------------------------------------------

/// Linear map on n x n matrices stored as an m^2 x n^2 matrix acting on
/// column-vectorized inputs.
class Superoperator {
public:
    Superoperator(std::size_t dim_in, std::size_t dim_out, ComplexMatrix matrix)
        : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
        if (matrix_.rows() != dim_out_ * dim_out_ || matrix_.cols() != dim_in_ * dim_in_)
            throw std::invalid_argument("superoperator matrix has wrong shape");
    }

    /// Lift an entrywise map formula to a superoperator by applying it to
    /// the matrix-unit basis.
    static Superoperator from_function(
        std::size_t dim_in, std::size_t dim_out,
        const std::function<ComplexMatrix(const ComplexMatrix&)>& fn) {
        ComplexMatrix s(dim_out * dim_out, dim_in * dim_in);
        for (std::size_t j = 0; j < dim_in; ++j) {
            for (std::size_t i = 0; i < dim_in; ++i) {
                const ComplexMatrix out = fn(ComplexMatrix::unit(dim_in, i, j));
                if (out.rows() != dim_out || out.cols() != dim_out)
                    throw std::invalid_argument("map formula output has wrong shape");
                const std::size_t col = j * dim_in + i;
                for (std::size_t l = 0; l < dim_out; ++l)
                    for (std::size_t k = 0; k < dim_out; ++k)
                        s(l * dim_out + k, col) = out(k, l);
            }
        }
        return Superoperator(dim_in, dim_out, std::move(s));
    }

    static Superoperator identity_map(std::size_t d) {
        return from_function(d, d, [](const ComplexMatrix& a) { return a; });
    }

    static Superoperator transpose_map(std::size_t d) {
        return from_function(d, d, [](const ComplexMatrix& a) { return a.transpose(); });
    }

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const ComplexMatrix& matrix() const { return matrix_; }

    ComplexMatrix apply(const ComplexMatrix& x) const {
        if (x.rows() != dim_in_ || x.cols() != dim_in_)
            throw std::invalid_argument("superoperator input has wrong shape");
        ComplexMatrix out(dim_out_, dim_out_);
        for (std::size_t col = 0; col < dim_in_ * dim_in_; ++col) {
            const Complex v = x(col % dim_in_, col / dim_in_);
            if (v == Complex{0.0, 0.0}) continue;
            for (std::size_t row = 0; row < dim_out_ * dim_out_; ++row) {
                out(row % dim_out_, row / dim_out_) += matrix_(row, col) * v;
            }
        }
        return out;
    }

    /// Adjoint map in the Hilbert-Schmidt inner product:
    /// Tr[S(A)^dag B] = Tr[A^dag S*(B)].
    Superoperator adjoint() const {
        return Superoperator(dim_out_, dim_in_, matrix_.adjoint());
    }

private:
    std::size_t dim_in_, dim_out_;
    ComplexMatrix matrix_;
};

// ---------------------------------------------------------------------------
// MapParams
// ---------------------------------------------------------------------------

enum class MapVariant { choi_i, choi_ii, osaka, generalized, transpose, identity };

/// Parameter pack naming one of the library's positive maps.
struct MapParams {
    MapVariant variant = MapVariant::choi_i;
    std::array<double, 3> p{1.0, 1.0, 1.0};  // mu in p[0]; (x,y,z) or (a,b,c)
    std::size_t dim = 3;                     // for transpose/identity

    static MapParams choi_i(double mu) { return {MapVariant::choi_i, {mu, 0, 0}, 3}; }
    static MapParams choi_ii(double mu) { return {MapVariant::choi_ii, {mu, 0, 0}, 3}; }
    static MapParams osaka(double x, double y, double z) {
        return {MapVariant::osaka, {x, y, z}, 3};
    }
    static MapParams generalized(double a, double b, double c) {
        return {MapVariant::generalized, {a, b, c}, 3};
    }
    static MapParams transpose(std::size_t d = 3) { return {MapVariant::transpose, {}, d}; }
    static MapParams identity(std::size_t d = 3) { return {MapVariant::identity, {}, d}; }

    void validate() const {
        switch (variant) {
            case MapVariant::choi_i:
            case MapVariant::choi_ii:
                if (p[0] < 1.0) throw std::invalid_argument("mu must be >= 1");
                break;
            case MapVariant::osaka:
                if (p[0] <= 0.0 || p[1] <= 0.0 || p[2] <= 0.0)
                    throw std::invalid_argument("x, y, z must be positive");
                break;
            case MapVariant::generalized:
                if (p[0] == 0.0 || p[1] == 0.0 || p[2] == 0.0)
                    throw std::invalid_argument("a, b, c must be nonzero");
                break;
            case MapVariant::transpose:
            case MapVariant::identity:
                if (dim == 0) throw std::invalid_argument("dimension must be positive");
                break;
        }
    }

    /// True for Osaka parameters on the extremal slice x*y*z = 1.
    bool is_extremal_parameterization() const {
        return variant == MapVariant::osaka && std::abs(p[0] * p[1] * p[2] - 1.0) < 1e-12;
    }

    std::string name() const {
        switch (variant) {
            case MapVariant::choi_i: return "choi1";
            case MapVariant::choi_ii: return "choi2";
            case MapVariant::osaka: return "osaka";
            case MapVariant::generalized: return "gen";
            case MapVariant::transpose: return "transpose";
            case MapVariant::identity: return "id";
        }
        return "?";
    }
};

namespace detail {

// Shared template for the Choi-type 3x3 maps: diagonal entry i of the
// output is alpha_i * a_ii + beta_i * a_{pair_i,pair_i}; off-diagonal
// (i,j) maps to -gamma_i*gamma_j * a_ij. Using one code path keeps
// parameter choices that coincide algebraically identical bitwise.
inline Superoperator choi_like(std::array<double, 3> alpha,
                               std::array<std::size_t, 3> pair,
                               std::array<double, 3> beta,
                               std::array<double, 3> gamma) {
    return Superoperator::from_function(3, 3, [=](const ComplexMatrix& a) {
        ComplexMatrix out(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            out(i, i) = alpha[i] * a(i, i) + beta[i] * a(pair[i], pair[i]);
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j) continue;
                out(i, j) = -(gamma[i] * gamma[j]) * a(i, j);
            }
        }
        return out;
    });
}

}  // namespace detail

/// Build the superoperator for a named map.
inline Superoperator build_map(const MapParams& params) {
    params.validate();
    switch (params.variant) {
        case MapVariant::choi_i: {
            const double mu = params.p[0];
            return detail::choi_like({1, 1, 1}, {2, 0, 1}, {mu, mu, mu}, {1, 1, 1});
        }
        case MapVariant::choi_ii: {
            const double mu = params.p[0];
            return detail::choi_like({1, 1, 1}, {1, 2, 0}, {mu, mu, mu}, {1, 1, 1});
        }
        case MapVariant::osaka:
            return detail::choi_like({1, 1, 1}, {2, 0, 1},
                                     {params.p[0], params.p[1], params.p[2]}, {1, 1, 1});
        case MapVariant::generalized: {
            const double a = params.p[0], b = params.p[1], c = params.p[2];
            return detail::choi_like({a * a, b * b, c * c}, {2, 0, 1},
                                     {c * c, a * a, b * b}, {a, b, c});
        }
        case MapVariant::transpose:
            return Superoperator::transpose_map(params.dim);
        case MapVariant::identity:
            return Superoperator::identity_map(params.dim);
    }
    throw std::logic_error("unreachable map variant");
}

// ---------------------------------------------------------------------------
// Identity extensions
// ---------------------------------------------------------------------------

/// (S x 1) rho: apply the map to the first tensor factor. Writing
/// rho = sum_ij E_ij x B_ij over first-factor matrix units, the result is
/// sum_ij S(E_ij) x B_ij.
inline HermitianMatrix apply_to_first_factor(const Superoperator& s,
                                             const DensityMatrix& rho) {
    const auto [da, db] = rho.dims();
    if (da != s.dim_in())
        throw std::invalid_argument("first factor dimension does not match map input");
    const std::size_t m = s.dim_out();
    const ComplexMatrix& r = rho.matrix();
    ComplexMatrix out(m * db, m * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            const ComplexMatrix mapped = s.apply(ComplexMatrix::unit(da, i, j));
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    const Complex f = mapped(k, l);
                    if (f == Complex{0.0, 0.0}) continue;
                    for (std::size_t u = 0; u < db; ++u)
                        for (std::size_t v = 0; v < db; ++v)
                            out(k * db + u, l * db + v) += f * r(i * db + u, j * db + v);
                }
        }
    }
    return HermitianMatrix(std::move(out));
}

/// (1 x S) rho: apply the map to the second tensor factor.
inline HermitianMatrix apply_to_second_factor(const Superoperator& s,
                                              const DensityMatrix& rho) {
    const auto [da, db] = rho.dims();
    if (db != s.dim_in())
        throw std::invalid_argument("second factor dimension does not match map input");
    const std::size_t m = s.dim_out();
    const ComplexMatrix& r = rho.matrix();
    ComplexMatrix out(da * m, da * m);
    for (std::size_t i = 0; i < db; ++i) {
        for (std::size_t j = 0; j < db; ++j) {
            const ComplexMatrix mapped = s.apply(ComplexMatrix::unit(db, i, j));
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    const Complex f = mapped(k, l);
                    if (f == Complex{0.0, 0.0}) continue;
                    for (std::size_t u = 0; u < da; ++u)
                        for (std::size_t v = 0; v < da; ++v)
                            out(u * m + k, v * m + l) += f * r(u * db + i, v * db + j);
                }
        }
    }
    return HermitianMatrix(std::move(out));
}

// ---------------------------------------------------------------------------
// Choi-matrix witnesses
// ---------------------------------------------------------------------------

enum class CjConvention {
    /// Full Choi matrix W = (1/d) sum_ij |i><j| x S(|i><j|). This is the
    /// operator for which Tr(W rho) >= 0 on every separable rho, so
    /// Tr(W rho) < 0 certifies entanglement.
    full_choi,
    /// Diagonal-only variant (1/sqrt(d)) sum_i |i><i| x S(|i><i|), kept
    /// for comparison. It is PSD for positive maps, so its trace test
    /// never fires; use full_choi for detection.
    diagonal_only
};

/// Witness operator of a square map via the Choi-Jamiolkowski isomorphism.
inline HermitianMatrix cj_witness(const Superoperator& s,
                                  CjConvention convention = CjConvention::full_choi) {
    if (s.dim_in() != s.dim_out())
        throw std::invalid_argument("witness requires a square map");
    const std::size_t d = s.dim_in();
    ComplexMatrix w(d * d, d * d);
    if (convention == CjConvention::full_choi) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const ComplexMatrix mapped = s.apply(ComplexMatrix::unit(d, i, j));
                for (std::size_t k = 0; k < d; ++k)
                    for (std::size_t l = 0; l < d; ++l)
                        w(i * d + k, j * d + l) = mapped(k, l) / static_cast<double>(d);
            }
    } else {
        const double norm = 1.0 / std::sqrt(static_cast<double>(d));
        for (std::size_t i = 0; i < d; ++i) {
            const ComplexMatrix mapped = s.apply(ComplexMatrix::unit(d, i, i));
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                    w(i * d + k, i * d + l) = mapped(k, l) * norm;
        }
    }
    return HermitianMatrix(std::move(w));
}

/// Re Tr(W rho). The imaginary part must vanish (both operators are
/// Hermitian); a residual above 1e-12 indicates corrupted inputs.
inline double witness_value(const HermitianMatrix& w, const DensityMatrix& rho) {
    if (w.side() != rho.side())
        throw std::invalid_argument("witness and state dimensions differ");
    const Complex t = (w.matrix() * rho.matrix()).trace();
    if (std::abs(t.imag()) >= 1e-12)
        throw std::runtime_error("witness trace has a nonzero imaginary part");
    return t.real();
}

}  // namespace witnesskit
