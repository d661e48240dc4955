// biquad.hpp
// Bi-quadratic forms F(X:Y) = sum C_ijkl x_i x_j y_k y_l, the
// correspondence between forms and hermiticity-preserving maps, variable
// scaling, and a multi-start numeric minimizer over unit-sphere pairs.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mat_core.hpp"
#include "rng.hpp"
#include "witness_maps.hpp"

namespace witnesskit {

/// Real 4-index coefficient tensor, stored fully symmetrized:
/// C[i][j][k][l] = C[j][i][k][l] = C[i][j][l][k]. Coefficient equality is
/// therefore a valid equivalence test for forms.
class BiQuadraticForm {
public:
    BiQuadraticForm(std::size_t n_x, std::size_t n_y)
        : nx_(n_x), ny_(n_y), c_(n_x * n_x * n_y * n_y, 0.0) {}

    std::size_t n_x() const { return nx_; }
    std::size_t n_y() const { return ny_; }

    double coeff(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return c_[idx(i, j, k, l)];
    }

    /// Add the monomial total*x_i*x_j*y_k*y_l, distributing the weight over
    /// the symmetric index slots.
    void add_term(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                  double total) {
        const double xs = (i == j) ? 1.0 : 2.0;
        const double ys = (k == l) ? 1.0 : 2.0;
        const double v = total / (xs * ys);
        c_[idx(i, j, k, l)] += v;
        c_[idx(j, i, k, l)] = c_[idx(i, j, k, l)];
        if (k != l) {
            c_[idx(i, j, l, k)] += v;
            c_[idx(j, i, l, k)] = c_[idx(i, j, l, k)];
        }
    }

    void set_coeff(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                   double v) {
        c_[idx(i, j, k, l)] = v;
        c_[idx(j, i, k, l)] = v;
        c_[idx(i, j, l, k)] = v;
        c_[idx(j, i, l, k)] = v;
    }

    double evaluate(const std::vector<double>& x, const std::vector<double>& y) const {
        if (x.size() != nx_ || y.size() != ny_)
            throw std::invalid_argument("vector length does not match form arity");
        double total = 0.0;
        for (std::size_t k = 0; k < ny_; ++k) {
            for (std::size_t l = 0; l < ny_; ++l) {
                const double yy = y[k] * y[l];
                if (yy == 0.0) continue;
                double m = 0.0;
                for (std::size_t i = 0; i < nx_; ++i)
                    for (std::size_t j = 0; j < nx_; ++j)
                        m += c_[idx(i, j, k, l)] * x[i] * x[j];
                total += m * yy;
            }
        }
        return total;
    }

    double max_coeff_difference(const BiQuadraticForm& o) const {
        if (nx_ != o.nx_ || ny_ != o.ny_)
            throw std::invalid_argument("form arities differ");
        double m = 0.0;
        for (std::size_t k = 0; k < c_.size(); ++k)
            m = std::max(m, std::abs(c_[k] - o.c_[k]));
        return m;
    }

private:
    std::size_t idx(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return ((i * nx_ + j) * ny_ + k) * ny_ + l;
    }

    std::size_t nx_, ny_;
    std::vector<double> c_;
};

/// The order-3 form with +1 on the squares x_i^2 y_i^2, -2 on the cyclic
/// cross terms x_i x_j y_i y_j, and +mu on the cyclic squares
/// x_i^2 y_{i+1}^2. Defined for mu >= 1.
inline BiQuadraticForm choi_form(double mu) {
    if (mu < 1.0) throw std::invalid_argument("mu must be >= 1");
    BiQuadraticForm f(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = (i + 1) % 3;
        f.add_term(i, i, i, i, 1.0);
        f.add_term(i, j, i, j, -2.0);
        f.add_term(i, i, j, j, mu);
    }
    return f;
}

/// Extract the form F(X:Y) = <Y|S(X X^T)|Y> of a map by evaluating it on
/// the symmetric matrix-unit basis (polarization over X, then reading the
/// Y-quadratic matrix directly).
inline BiQuadraticForm form_from_map(const Superoperator& s) {
    const std::size_t n = s.dim_in();
    const std::size_t m = s.dim_out();
    BiQuadraticForm f(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            ComplexMatrix basis =
                (i == j) ? ComplexMatrix::unit(n, i, i)
                         : ComplexMatrix::unit(n, i, j) + ComplexMatrix::unit(n, j, i);
            ComplexMatrix image = s.apply(basis);
            const double half = (i == j) ? 1.0 : 0.5;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    // symmetric real part of the image, scaled by the
                    // polarization factor
                    const double v =
                        half * 0.5 * (image(k, l).real() + image(l, k).real());
                    f.set_coeff(i, j, k, l, v);
                }
        }
    }
    return f;
}

/// Reconstruct a map from a form. On real symmetric inputs the map is
/// pinned by S(X X^T)_kl = sum_ij C_ijkl x_i x_j. On the skew components
/// the form leaves the extension free up to hermiticity preservation; the
/// extension used here copies each pair's off-diagonal weight
/// w_ij = 2 C[i][j][i][j] onto the skew part, S(E_ij - E_ji) =
/// w_ij (E_ij - E_ji), which reproduces the library's named maps exactly.
inline Superoperator map_from_form(const BiQuadraticForm& f) {
    if (f.n_x() != f.n_y())
        throw std::invalid_argument("map reconstruction requires a square form");
    const std::size_t n = f.n_x();
    return Superoperator::from_function(n, n, [f, n](const ComplexMatrix& a) {
        ComplexMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    out(k, l) += a(i, i) * f.coeff(i, i, k, l);
            for (std::size_t j = i + 1; j < n; ++j) {
                const Complex sym = 0.5 * (a(i, j) + a(j, i));
                const Complex skew = 0.5 * (a(i, j) - a(j, i));
                // symmetric part: S(E_ij + E_ji) = 2 C[i][j][.][.]
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        out(k, l) += 2.0 * sym * f.coeff(i, j, k, l);
                const double w = 2.0 * f.coeff(i, j, i, j);
                out(i, j) += w * skew;
                out(j, i) -= w * skew;
            }
        }
        return out;
    });
}

enum class ScaleSide { x, y };

/// Substitute x_i -> s_i x_i (or y_k -> s_k y_k): coefficients pick up the
/// product of the two scales on the chosen side.
inline BiQuadraticForm scale_variables(const BiQuadraticForm& f,
                                       const std::vector<double>& scales,
                                       ScaleSide side) {
    const std::size_t need = (side == ScaleSide::x) ? f.n_x() : f.n_y();
    if (scales.size() != need)
        throw std::invalid_argument("scale vector length does not match form arity");
    for (double s : scales)
        if (s == 0.0) throw std::invalid_argument("scales must be nonzero");
    BiQuadraticForm out(f.n_x(), f.n_y());
    for (std::size_t i = 0; i < f.n_x(); ++i)
        for (std::size_t j = 0; j < f.n_x(); ++j)
            for (std::size_t k = 0; k < f.n_y(); ++k)
                for (std::size_t l = 0; l < f.n_y(); ++l) {
                    const double w = (side == ScaleSide::x) ? scales[i] * scales[j]
                                                            : scales[k] * scales[l];
                    out.set_coeff(i, j, k, l, w * f.coeff(i, j, k, l));
                }
    return out;
}

/// Result of the numeric sphere-pair minimization.
struct FormMinimum {
    double value;
    std::vector<double> x;
    std::vector<double> y;
};

namespace detail {

inline void normalize_or_reset(std::vector<double>& v, Rng& rng) {
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    if (n2 < 1e-12) {
        for (double& c : v) c = rng.uniform(-1.0, 1.0);
        normalize_or_reset(v, rng);
        return;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : v) c *= inv;
}

}  // namespace detail

/// Minimum of the form over unit-sphere pairs (||X|| = ||Y|| = 1) by
/// multi-start coordinate descent with step shrinking, 200 sweeps per
/// start. Deterministic for a fixed seed; starts are merged by strict
/// minimum so ties resolve to the lowest start index.
inline FormMinimum numeric_min(const BiQuadraticForm& f, std::size_t n_starts,
                               std::uint64_t seed) {
    FormMinimum best{std::numeric_limits<double>::infinity(), {}, {}};
    for (std::size_t start = 0; start < n_starts; ++start) {
        Rng rng = rng_for_task(seed, start);
        std::vector<double> x(f.n_x()), y(f.n_y());
        for (double& c : x) c = rng.uniform(-1.0, 1.0);
        for (double& c : y) c = rng.uniform(-1.0, 1.0);
        detail::normalize_or_reset(x, rng);
        detail::normalize_or_reset(y, rng);

        double value = f.evaluate(x, y);
        double step = 0.5;
        for (int sweep = 0; sweep < 200 && step > 1e-10; ++sweep) {
            bool improved = false;
            for (std::size_t side = 0; side < 2; ++side) {
                std::vector<double>& v = (side == 0) ? x : y;
                for (std::size_t c = 0; c < v.size(); ++c) {
                    for (double delta : {step, -step}) {
                        std::vector<double> xt = x, yt = y;
                        std::vector<double>& vt = (side == 0) ? xt : yt;
                        vt[c] += delta;
                        double n2 = 0.0;
                        for (double t : vt) n2 += t * t;
                        if (n2 < 1e-12) continue;
                        const double inv = 1.0 / std::sqrt(n2);
                        for (double& t : vt) t *= inv;
                        const double cand = f.evaluate(xt, yt);
                        if (cand < value) {
                            value = cand;
                            x = xt;
                            y = yt;
                            improved = true;
                        }
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (value < best.value) best = {value, x, y};
    }
    return best;
}

}  // namespace witnesskit
