// search.hpp
// Randomized search for PT-invariant states built from a sparse
// upper-triangular ansatz rho = T^t T. Each draw is pushed toward the
// PT-invariant manifold and toward the sign condition
//   Tr(W_detect rho) < 0  and  Tr(W_reject rho) >= 0,
// then polished against the residual alone and evaluated.
//
// T is real-valued throughout; the states this search targets are real.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mat_core.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "states.hpp"
#include "witness_maps.hpp"

namespace witnesskit {

/// Configuration of one search run. The pattern lists the
/// upper-triangular positions of T allowed to be nonzero.
struct SearchConfig {
    std::vector<std::pair<std::size_t, std::size_t>> pattern = t_factor_pattern();
    std::uint64_t seed = 1;
    std::size_t max_iters = 500;
    double residual_tol = 1e-10;
    MapParams witness_detect = MapParams::osaka(1.0, 6.0, 1.0 / 6.0);
    MapParams witness_reject = MapParams::choi_i(1.0);
    std::pair<double, double> value_range{-1.0, 1.0};

    void validate() const {
        if (pattern.empty()) throw std::invalid_argument("pattern must not be empty");
        for (auto [r, c] : pattern) {
            if (c < r || r >= 9 || c >= 9)
                throw std::invalid_argument("pattern positions must be upper-triangular in a 9x9 grid");
        }
        if (!(residual_tol > 0.0)) throw std::invalid_argument("residual_tol must be positive");
        if (!(value_range.first < value_range.second))
            throw std::invalid_argument("value_range must be a nonempty interval");
        witness_detect.validate();
        witness_reject.validate();
        if (witness_detect.dim != 3 || witness_reject.dim != 3)
            throw std::invalid_argument("search witnesses must come from maps on 3x3 matrices");
    }
};

/// An accepted state: the factor, the normalized state, its PT residual,
/// both witness values and the minimum eigenvalue under the identity
/// extension of the detect map.
struct Candidate {
    UpperTriangular t;
    DensityMatrix rho;
    double residual;
    double w_detect;
    double w_reject;
    double min_eig_detect;
};

/// Candidate plus provenance inside a run.
struct SearchHit {
    std::size_t iteration;
    std::uint64_t seed;
    Candidate candidate;
};

/// Frobenius norm of (T^dag T)^PT - T^dag T for a 9x9 factor.
inline double ppt_residual(const UpperTriangular& t) {
    if (t.side() != 9) throw std::invalid_argument("ppt residual expects a 9x9 factor");
    const ComplexMatrix gram = t.gram();
    return (partial_transpose(gram, {3, 3}) - gram).frobenius_norm();
}

namespace detail {

// Real 9x9 workspace for the hot loop. T is real; rho = T^t T is built by
// accumulating row outer products over the sparse pattern.
struct SearchContext {
    std::vector<std::pair<std::size_t, std::size_t>> pattern;
    std::array<double, 81> w_detect{};
    std::array<double, 81> w_reject{};

    static std::size_t pt_index(std::size_t i, std::size_t j) {
        // second-factor partial transpose: (3a+u, 3b+v) <-> (3a+v, 3b+u)
        return (i / 3 * 3 + j % 3) * 9 + (j / 3 * 3 + i % 3);
    }

    void gram(const std::vector<double>& v, std::array<double, 81>& r) const {
        r.fill(0.0);
        for (std::size_t a = 0; a < pattern.size(); ++a) {
            for (std::size_t b = 0; b < pattern.size(); ++b) {
                if (pattern[a].first != pattern[b].first) continue;
                r[pattern[a].second * 9 + pattern[b].second] += v[a] * v[b];
            }
        }
    }

    static double residual_of(const std::array<double, 81>& r) {
        double s = 0.0;
        for (std::size_t k = 0; k < 81; ++k) {
            const double d = r[pt_index(k / 9, k % 9)] - r[k];
            s += d * d;
        }
        return std::sqrt(s);
    }

    static double trace_of(const std::array<double, 81>& r) {
        double s = 0.0;
        for (std::size_t i = 0; i < 9; ++i) s += r[i * 9 + i];
        return s;
    }

    double residual(const std::vector<double>& v) const {
        std::array<double, 81> r;
        gram(v, r);
        return residual_of(r);
    }

    // residual plus hinge penalties steering toward the sign condition
    double guided_objective(const std::vector<double>& v) const {
        std::array<double, 81> r;
        gram(v, r);
        const double tr = trace_of(r);
        if (tr < 1e-12) return 1e100;
        double wd = 0.0, wr = 0.0;
        for (std::size_t k = 0; k < 81; ++k) {
            wd += w_detect[k] * r[k];
            wr += w_reject[k] * r[k];
        }
        wd /= tr;
        wr /= tr;
        constexpr double penalty = 10.0;
        constexpr double detect_margin = 5e-3;
        return residual_of(r) + penalty * std::max(0.0, wd + detect_margin) +
               penalty * std::max(0.0, -wr);
    }
};

inline void normalize_values(std::vector<double>& v) {
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    if (n2 <= 0.0) throw std::invalid_argument("cannot normalize the zero factor");
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : v) c *= inv;
}

// Coordinate descent over unit-norm value vectors. Each trial perturbs one
// slot and renormalizes; the step halves after a sweep with no
// improvement.
template <typename F>
void descend(std::vector<double>& v, const F& objective, double step0,
             int shrink_levels, std::size_t max_sweeps, double stop_below) {
    normalize_values(v);
    double best = objective(v);
    double step = step0;
    int shrinks = 0;
    for (std::size_t sweep = 0; sweep < max_sweeps && shrinks <= shrink_levels; ++sweep) {
        if (best <= stop_below) break;
        bool improved = false;
        for (std::size_t k = 0; k < v.size(); ++k) {
            for (double delta : {step, -step}) {
                std::vector<double> w = v;
                w[k] += delta;
                double n2 = 0.0;
                for (double c : w) n2 += c * c;
                if (n2 < 1e-24) continue;
                const double inv = 1.0 / std::sqrt(n2);
                for (double& c : w) c *= inv;
                const double cand = objective(w);
                if (cand < best) {
                    best = cand;
                    v = std::move(w);
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
            ++shrinks;
        }
    }
}

inline std::vector<double> values_from_factor(
    const UpperTriangular& t,
    const std::vector<std::pair<std::size_t, std::size_t>>& pattern) {
    std::vector<double> v(pattern.size());
    ComplexMatrix residue = t.matrix();
    for (std::size_t k = 0; k < pattern.size(); ++k) {
        const Complex e = t(pattern[k].first, pattern[k].second);
        if (std::abs(e.imag()) > 0.0)
            throw std::invalid_argument("search factors must be real-valued");
        v[k] = e.real();
        residue(pattern[k].first, pattern[k].second) = 0.0;
    }
    if (residue.max_abs() != 0.0)
        throw std::invalid_argument("factor has entries outside the search pattern");
    return v;
}

inline UpperTriangular factor_from_values(
    const std::vector<double>& v,
    const std::vector<std::pair<std::size_t, std::size_t>>& pattern) {
    UpperTriangular t(9);
    for (std::size_t k = 0; k < pattern.size(); ++k)
        t.set(pattern[k].first, pattern[k].second, v[k]);
    return t;
}

}  // namespace detail

/// Outcome of minimize_residual: the best factor found, its residual, and
/// whether the tolerance was reached.
struct ResidualMinimization {
    UpperTriangular t;
    double residual;
    bool converged;
};

/// Drive the PT residual of a pattern-supported factor below
/// cfg.residual_tol by normalized coordinate descent (step halving, 20
/// shrink levels, sweep cap cfg.max_iters). A factor already inside the
/// tolerance is returned unchanged. The descent starts with a step
/// proportional to the initial residual so that near-solutions stay in
/// their basin.
inline ResidualMinimization minimize_residual(const UpperTriangular& t0,
                                              const SearchConfig& cfg) {
    cfg.validate();
    std::vector<double> v = detail::values_from_factor(t0, cfg.pattern);
    detail::SearchContext ctx;
    ctx.pattern = cfg.pattern;

    const double r0 = ppt_residual(t0);
    if (r0 <= cfg.residual_tol) return {t0, r0, true};

    const double step0 = std::min(0.25, std::max(1e-4, 0.5 * r0));
    detail::descend(
        v, [&ctx](const std::vector<double>& w) { return ctx.residual(w); }, step0, 20,
        std::max<std::size_t>(cfg.max_iters, 1), cfg.residual_tol * 0.1);

    UpperTriangular t = detail::factor_from_values(v, cfg.pattern);
    const double r = ppt_residual(t);
    return {t, r, r <= cfg.residual_tol};
}

/// Normalize rho = T^dag T / tr, compute both witness values and the
/// minimum eigenvalue under (detect x 1), and accept when the detect
/// witness is negative and the reject witness is not. Requires the factor
/// to satisfy the residual tolerance already.
inline std::optional<Candidate> evaluate_candidate(const UpperTriangular& t,
                                                   const SearchConfig& cfg) {
    cfg.validate();
    const double res = ppt_residual(t);
    if (res > cfg.residual_tol)
        throw std::invalid_argument("factor does not satisfy the residual tolerance");
    ComplexMatrix gram = t.gram();
    const double tr = gram.trace().real();
    if (tr <= 1e-12) return std::nullopt;
    DensityMatrix rho(HermitianMatrix((1.0 / tr) * gram), {3, 3});

    const Superoperator detect = build_map(cfg.witness_detect);
    const double wd = witness_value(cj_witness(detect), rho);
    const double wr = witness_value(cj_witness(build_map(cfg.witness_reject)), rho);
    const double me = min_eigval(apply_to_first_factor(detect, rho));
    if (!(wd < 0.0 && wr >= 0.0)) return std::nullopt;
    return Candidate{t, std::move(rho), res, wd, wr, me};
}

/// Run the full pipeline: draw a random factor on the pattern, steer it
/// onto the PT-invariant manifold while pushing the witness values toward
/// the sign condition, polish the residual, and evaluate. Deterministic
/// for a fixed seed: iteration i uses the stream seeded with seed + i, so
/// parallel execution reproduces the sequential hit list.
inline std::vector<SearchHit> run_search(const SearchConfig& cfg, std::size_t jobs = 1) {
    cfg.validate();
    detail::SearchContext ctx;
    ctx.pattern = cfg.pattern;
    {
        const HermitianMatrix wd = cj_witness(build_map(cfg.witness_detect));
        const HermitianMatrix wr = cj_witness(build_map(cfg.witness_reject));
        for (std::size_t k = 0; k < 81; ++k) {
            ctx.w_detect[k] = wd(k / 9, k % 9).real();
            ctx.w_reject[k] = wr(k / 9, k % 9).real();
        }
    }

    std::vector<std::optional<SearchHit>> slots(cfg.max_iters);
    parallel_for(cfg.max_iters, jobs, [&](std::size_t iter) {
        Rng rng = rng_for_task(cfg.seed, iter);
        std::vector<double> v(cfg.pattern.size());
        double n2 = 0.0;
        do {
            n2 = 0.0;
            for (double& c : v) {
                c = rng.uniform(cfg.value_range.first, cfg.value_range.second);
                n2 += c * c;
            }
        } while (n2 < 1e-12);

        // witness-guided phase, then residual-only polish
        detail::descend(
            v, [&ctx](const std::vector<double>& w) { return ctx.guided_objective(w); },
            0.25, 45, 200, 0.0);
        ResidualMinimization polished =
            minimize_residual(detail::factor_from_values(v, cfg.pattern), cfg);
        if (!polished.converged) return;
        std::optional<Candidate> cand = evaluate_candidate(polished.t, cfg);
        if (cand)
            slots[iter] = SearchHit{iter, cfg.seed, std::move(*cand)};
    });

    std::vector<SearchHit> hits;
    for (auto& s : slots)
        if (s) hits.push_back(std::move(*s));
    return hits;
}

}  // namespace witnesskit
