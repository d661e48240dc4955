// analysis.hpp
// Parameter sweeps of minimum eigenvalues under identity-extended positive
// maps, bisection of sign crossings, detection windows and robustness
// curves.
//
// Detection score. A positive map S certifies entanglement through two
// one-sided extensions: (S x 1) rho and (1 x S*) rho, where S* is the
// Hilbert-Schmidt adjoint (also a positive map; its Choi matrix is the
// witness of S). Both send separable states to PSD operators, so the
// score min(lambda_min of each) is negative only on entangled states.
// Sweeps, thresholds and windows all use this score.

#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <ctime>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mat_core.hpp"
#include "parallel.hpp"
#include "states.hpp"
#include "witness_maps.hpp"

namespace witnesskit {

inline constexpr const char* kVersion = "0.1.0";

enum class Family { choi, osaka };

inline std::string family_name(Family f) {
    return f == Family::choi ? "choi" : "osaka";
}

/// min over the two one-sided certificates of the map.
inline double detection_min_eig(const Superoperator& s, const DensityMatrix& rho) {
    const double first = min_eigval(apply_to_first_factor(s, rho));
    const double second = min_eigval(apply_to_second_factor(s.adjoint(), rho));
    return std::min(first, second);
}

using ParamMap = std::map<std::string, double>;

/// Build a family state from named parameters (choi: x, t; osaka: y).
inline DensityMatrix family_state(Family fam, const ParamMap& params) {
    auto need = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument(std::string("missing parameter '") + key + "'");
        return it->second;
    };
    if (fam == Family::choi) return rho_choi_family({need("x"), need("t")});
    return rho_osaka_family({need("y")});
}

/// Resolve the map at a sweep point. For the osaka family a parameter
/// named "x" selects the one-parameter slice osaka(1, x, 1/x) of an osaka
/// base map; every other case uses the base map unchanged.
inline MapParams map_at_point(Family fam, const MapParams& base, const ParamMap& params) {
    if (fam == Family::osaka && base.variant == MapVariant::osaka) {
        auto it = params.find("x");
        if (it != params.end()) return MapParams::osaka(1.0, it->second, 1.0 / it->second);
    }
    return base;
}

/// One sweep axis: parameter name, closed range and point count.
struct AxisSpec {
    std::string name;
    double lo;
    double hi;
    std::size_t steps;

    void validate() const {
        if (!(lo < hi)) throw std::invalid_argument("axis range requires lo < hi");
        if (steps < 2) throw std::invalid_argument("axis needs at least 2 steps");
    }

    double value(std::size_t i) const {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

struct SweepSpec {
    Family family = Family::choi;
    MapParams map = MapParams::choi_i(1.0);
    AxisSpec axis1;
    AxisSpec axis2;
    ParamMap fixed;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;
    std::vector<double> lambda_min;  // row-major: [i1 * axis2.steps + i2]
    std::string timestamp;
    std::string code_version;
};

namespace detail {

inline double sweep_cell(Family fam, const MapParams& base, const ParamMap& params) {
    const DensityMatrix rho = family_state(fam, params);
    const Superoperator s = build_map(map_at_point(fam, base, params));
    return detection_min_eig(s, rho);
}

inline void require_bindable_axis(Family fam, const MapParams& map, const std::string& name) {
    const bool ok = (fam == Family::choi && (name == "x" || name == "t")) ||
                    (fam == Family::osaka &&
                     (name == "y" || (name == "x" && map.variant == MapVariant::osaka)));
    if (!ok)
        throw std::invalid_argument("axis '" + name + "' does not bind a parameter of the " +
                                    family_name(fam) + " family with map '" + map.name() + "'");
}

inline std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace detail

/// Minimum-eigenvalue curve along one varying parameter.
inline std::vector<std::pair<double, double>> min_eig_curve(
    Family fam, const MapParams& map, const AxisSpec& varying, const ParamMap& fixed,
    std::size_t jobs = 1) {
    varying.validate();
    map.validate();
    detail::require_bindable_axis(fam, map, varying.name);
    std::vector<std::pair<double, double>> out(varying.steps);
    parallel_for(varying.steps, jobs, [&](std::size_t i) {
        ParamMap params = fixed;
        const double v = varying.value(i);
        params[varying.name] = v;
        out[i] = {v, detail::sweep_cell(fam, map, params)};
    });
    return out;
}

/// Two-axis grid of the same quantity, row-major over (axis1, axis2).
inline SweepResult min_eig_surface(const SweepSpec& spec, std::size_t jobs = 1) {
    spec.axis1.validate();
    spec.axis2.validate();
    spec.map.validate();
    detail::require_bindable_axis(spec.family, spec.map, spec.axis1.name);
    detail::require_bindable_axis(spec.family, spec.map, spec.axis2.name);
    SweepResult res;
    res.spec = spec;
    res.timestamp = detail::utc_timestamp();
    res.code_version = kVersion;
    res.axis1_values.resize(spec.axis1.steps);
    res.axis2_values.resize(spec.axis2.steps);
    for (std::size_t i = 0; i < spec.axis1.steps; ++i)
        res.axis1_values[i] = spec.axis1.value(i);
    for (std::size_t j = 0; j < spec.axis2.steps; ++j)
        res.axis2_values[j] = spec.axis2.value(j);
    res.lambda_min.assign(spec.axis1.steps * spec.axis2.steps, 0.0);
    parallel_for(res.lambda_min.size(), jobs, [&](std::size_t cell) {
        ParamMap params = spec.fixed;
        params[spec.axis1.name] = res.axis1_values[cell / spec.axis2.steps];
        params[spec.axis2.name] = res.axis2_values[cell % spec.axis2.steps];
        res.lambda_min[cell] = detail::sweep_cell(spec.family, spec.map, params);
    });
    return res;
}

/// Bisection of a sign change. Requires f(lo) and f(hi) of opposite sign;
/// narrows to |hi - lo| <= tol and returns the midpoint.
inline double threshold(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-6) {
    if (!(lo < hi)) throw std::invalid_argument("threshold requires lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument(
            "threshold endpoints have the same sign; re-bracket the crossing");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Detection score of a family state as a function of one parameter,
/// with the remaining parameters fixed.
inline std::function<double(double)> detection_score_fn(Family fam, const MapParams& map,
                                                        const std::string& varying,
                                                        const ParamMap& fixed) {
    return [fam, map, varying, fixed](double v) {
        ParamMap params = fixed;
        params[varying] = v;
        return detail::sweep_cell(fam, map, params);
    };
}

/// Largest admixture of white noise under which the state stays detected:
/// the eps where the detection score of (eps/9) I + (1 - eps) rho crosses
/// zero. The state must be detected at eps = 0. A 50-point scan checks
/// that the crossing in [0, 1] is unique before bisecting.
inline double robustness_threshold(const DensityMatrix& rho, const MapParams& map,
                                   double tol = 1e-6) {
    map.validate();
    const Superoperator s = build_map(map);
    auto score = [&](double eps) { return detection_min_eig(s, mix_with_noise(rho, eps)); };
    if (!(score(0.0) < 0.0))
        throw std::invalid_argument("map does not detect the state at eps = 0");

    constexpr std::size_t scan_points = 50;
    double prev = score(0.0);
    double lo = 0.0, hi = 1.0;
    std::size_t crossings = 0;
    for (std::size_t k = 1; k < scan_points; ++k) {
        const double eps = static_cast<double>(k) / (scan_points - 1);
        const double cur = score(eps);
        if ((prev < 0.0) && (cur >= 0.0)) {
            ++crossings;
            lo = static_cast<double>(k - 1) / (scan_points - 1);
            hi = eps;
        } else if ((prev >= 0.0) && (cur < 0.0)) {
            ++crossings;  // re-entry would make the bracket ambiguous
        }
        prev = cur;
    }
    if (crossings != 1)
        throw std::runtime_error("robustness scan did not find a unique sign crossing");
    return threshold(score, lo, hi, tol);
}

/// Pair of detection thresholds for two maps over the same section.
/// The window is nonempty when the first map detects earlier.
inline std::pair<double, double> detection_window(Family fam, const MapParams& map_a,
                                                  const MapParams& map_b,
                                                  const AxisSpec& section,
                                                  const ParamMap& fixed,
                                                  double tol = 1e-6) {
    section.validate();
    auto locate = [&](const MapParams& m) {
        auto f = detection_score_fn(fam, m, section.name, fixed);
        double prev = f(section.value(0));
        for (std::size_t k = 1; k < section.steps; ++k) {
            const double v = section.value(k);
            const double cur = f(v);
            if ((prev < 0.0) != (cur < 0.0))
                return threshold(f, section.value(k - 1), v, tol);
            prev = cur;
        }
        throw std::invalid_argument("no sign crossing for map '" + m.name() +
                                    "' on the given section");
    };
    return {locate(map_a), locate(map_b)};
}

}  // namespace witnesskit
