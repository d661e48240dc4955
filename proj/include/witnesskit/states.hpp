// states.hpp
// The two explicit 3x3-bipartite state families, the upper-triangular
// factor behind the second family, and white-noise mixing. Matrices are
// built entry by entry from their closed forms; the triangular factor is
// kept as an independent cross-check rather than a construction path.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mat_core.hpp"

namespace witnesskit {

/// Parameters of the two-parameter family rho(x, t): t > 0, 0 <= x <= 1.
struct ChoiFamilyParams {
    double x;
    double t;

    void validate() const {
        if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must be in [0, 1]");
    }
};

/// Parameters of the one-parameter family rho(y): y > 0.
struct OsakaFamilyParams {
    double y;

    void validate() const {
        if (!(y > 0.0)) throw std::invalid_argument("y must be positive");
    }

    /// Normalization N = 10 + 36 y + 57 y^2.
    double normalization() const { return 10.0 + 36.0 * y + 57.0 * y * y; }
};

/// rho(x, t): PT-invariant 9x9 density matrix with prefactor
/// 1/(4 + 3/t + 4t). Diagonal (1+t, t, 1/t, 1/t, 1+t, t, 1, 1/t, 1);
/// six symmetric off-diagonal pairs carry the value x.
inline DensityMatrix rho_choi_family(const ChoiFamilyParams& p) {
    p.validate();
    const double t = p.t;
    const double pref = 1.0 / (4.0 + 3.0 / t + 4.0 * t);
    ComplexMatrix m(9, 9);
    const double diag[9] = {1.0 + t, t, 1.0 / t, 1.0 / t, 1.0 + t, t, 1.0, 1.0 / t, 1.0};
    for (std::size_t i = 0; i < 9; ++i) m(i, i) = pref * diag[i];
    const std::pair<std::size_t, std::size_t> cross[6] = {
        {0, 4}, {0, 8}, {1, 3}, {2, 6}, {4, 8}, {5, 7}};
    for (auto [i, j] : cross) {
        m(i, j) = pref * p.x;
        m(j, i) = pref * p.x;
    }
    return DensityMatrix(HermitianMatrix(std::move(m)), {3, 3});
}

/// Unnormalized upper-triangular factor T(y) with rho(y) = T^t T / N.
/// Nonzero rows are 1, 2, 3, 5 and 6 (zero-based 0, 1, 2, 4, 5).
inline UpperTriangular t_factor_osaka(const OsakaFamilyParams& p) {
    p.validate();
    const double y = p.y;
    const double s10 = std::sqrt(10.0);
    UpperTriangular t(9);
    t.set(0, 0, s10 * y);
    t.set(0, 4, (2.0 + 5.0 * y) / s10);
    t.set(0, 8, 3.0 * (1.0 + y) / s10);
    t.set(1, 1, y);
    t.set(1, 3, 2.0 + 5.0 * y);
    t.set(2, 2, 3.0 * y);
    t.set(2, 6, 1.0 + y);
    t.set(4, 4, (4.0 + 5.0 * y) / s10);
    t.set(4, 8, (1.0 + y) / s10);
    t.set(5, 5, 1.0 + 2.0 * y);
    t.set(5, 7, 1.0 + y);
    return t;
}

/// Sparsity pattern of t_factor_osaka: the eleven upper-triangular
/// positions that may be nonzero. This is the default ansatz for the
/// randomized search.
inline std::vector<std::pair<std::size_t, std::size_t>> t_factor_pattern() {
    return {{0, 0}, {0, 4}, {0, 8}, {1, 1}, {1, 3}, {2, 2},
            {2, 6}, {4, 4}, {4, 8}, {5, 5}, {5, 7}};
}

/// rho(y): rank <= 6, exactly PT-invariant, unit trace by construction.
inline DensityMatrix rho_osaka_family(const OsakaFamilyParams& p) {
    p.validate();
    const double y = p.y;
    const double n = p.normalization();
    ComplexMatrix m(9, 9);
    auto put = [&](std::size_t i, std::size_t j, double v) {
        m(i, j) = v / n;
        m(j, i) = v / n;
    };
    put(0, 0, 10.0 * y * y);
    put(1, 1, y * y);
    put(2, 2, 9.0 * y * y);
    put(3, 3, (2.0 + 5.0 * y) * (2.0 + 5.0 * y));
    put(4, 4, 2.0 + 6.0 * y + 5.0 * y * y);
    put(5, 5, (1.0 + 2.0 * y) * (1.0 + 2.0 * y));
    put(6, 6, (1.0 + y) * (1.0 + y));
    put(7, 7, (1.0 + y) * (1.0 + y));
    put(8, 8, (1.0 + y) * (1.0 + y));
    put(0, 4, y * (2.0 + 5.0 * y));
    put(0, 8, 3.0 * y * (1.0 + y));
    put(1, 3, y * (2.0 + 5.0 * y));
    put(2, 6, 3.0 * y * (1.0 + y));
    put(4, 8, (1.0 + y) * (1.0 + 2.0 * y));
    put(5, 7, (1.0 + y) * (1.0 + 2.0 * y));
    return DensityMatrix(HermitianMatrix(std::move(m)), {3, 3});
}

/// Convex mix with the maximally mixed state:
/// (eps/9) I_9 + (1 - eps) rho. Requires a 9x9 state and eps in [0, 1].
inline DensityMatrix mix_with_noise(const DensityMatrix& rho, double eps) {
    if (rho.side() != 9) throw std::invalid_argument("noise mixing expects a 9x9 state");
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in [0, 1]");
    ComplexMatrix m = (1.0 - eps) * rho.matrix();
    for (std::size_t i = 0; i < 9; ++i) m(i, i) += eps / 9.0;
    return DensityMatrix(HermitianMatrix(std::move(m)), rho.dims(), rho.tol());
}

}  // namespace witnesskit
