// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. Every tolerance is pinned here, in code.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "witnesskit/witnesskit.hpp"

using namespace witnesskit;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    std::printf("%s  %2d  %s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(), note.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

const double kSectionT = 1.0 / 20.0;

bool check_detection_thresholds_two_parameter_family() {
    auto f_gen = detection_score_fn(Family::choi, MapParams::generalized(1.6, 1.0, 1.0), "x",
                                    {{"t", kSectionT}});
    const double x_gen = threshold(f_gen, 0.5, 0.7, 1e-6);
    auto f_c1 =
        detection_score_fn(Family::choi, MapParams::choi_i(1.0), "x", {{"t", kSectionT}});
    const double x_c1 = threshold(f_c1, 0.5, 0.7, 1e-6);
    return std::abs(x_gen - 0.604428) <= 0.005 && std::abs(x_c1 - 0.66) <= 0.01 &&
           x_gen < x_c1;
}

bool check_detection_thresholds_one_parameter_family() {
    auto f_os =
        detection_score_fn(Family::osaka, MapParams::osaka(1.0, 6.0, 1.0 / 6.0), "y", {});
    const double y_os = threshold(f_os, 0.25, 0.45, 1e-6);
    auto f_c1 = detection_score_fn(Family::osaka, MapParams::choi_i(1.0), "y", {});
    const double y_c1 = threshold(f_c1, 0.25, 0.45, 1e-6);
    return std::abs(y_os - 0.326402) <= 0.005 && std::abs(y_c1 - 0.369284) <= 0.005 &&
           y_os < y_c1;
}

bool check_noise_robustness() {
    const double eps_os =
        robustness_threshold(rho_osaka_family({5.0 / 2.0}), MapParams::osaka(1.0, 6.0, 1.0 / 6.0));
    const double eps_gen = robustness_threshold(rho_choi_family({7.0 / 10.0, 3.0 / 40.0}),
                                                MapParams::generalized(1.6, 1.0, 1.0));
    return eps_os >= 0.040 && eps_os <= 0.050 && std::abs(eps_gen - 0.012) <= 0.003;
}

bool check_families_are_ppt() {
    for (int k = 0; k <= 100; ++k) {
        const DensityMatrix rho = rho_choi_family({k / 100.0, kSectionT});
        if (min_eigval(HermitianMatrix(partial_transpose(rho))) < -1e-10) return false;
    }
    Rng rng(404);
    for (int k = 0; k < 50; ++k) {
        const DensityMatrix rho = rho_osaka_family({rng.uniform(1e-9, 5.0)});
        if ((partial_transpose(rho) - rho.matrix()).frobenius_norm() >= 1e-12) return false;
    }
    return true;
}

bool check_map_identities() {
    const ComplexMatrix c1 = build_map(MapParams::choi_i(1.0)).matrix();
    if ((build_map(MapParams::osaka(1.0, 1.0, 1.0)).matrix() - c1).max_abs() != 0.0)
        return false;
    if ((build_map(MapParams::generalized(1.0, 1.0, 1.0)).matrix() - c1).max_abs() != 0.0)
        return false;
    for (double mu : {1.0, 1.5, 2.0}) {
        const BiQuadraticForm f = form_from_map(build_map(MapParams::choi_i(mu)));
        if (f.max_coeff_difference(choi_form(mu)) > 1e-14) return false;
    }
    return true;
}

bool check_positive_map_property() {
    const std::vector<MapParams> maps = {
        MapParams::choi_i(1.0),           MapParams::choi_i(2.0),
        MapParams::choi_ii(1.0),          MapParams::osaka(1.0, 6.0, 1.0 / 6.0),
        MapParams::generalized(1.6, 1.0, 1.0), MapParams::generalized(0.5, -2.0, 1.0)};
    Rng pure_rng(606);
    for (const MapParams& p : maps) {
        const Superoperator s = build_map(p);
        for (int k = 0; k < 10000; ++k) {
            const ComplexMatrix v = oracles::random_pure_state(3, pure_rng);
            if (min_eigval(HermitianMatrix(s.apply(v))) < -1e-10) return false;
        }
    }
    Rng sep_rng(607);
    std::vector<DensityMatrix> separable;
    separable.reserve(1000);
    for (int k = 0; k < 1000; ++k) {
        ComplexMatrix m(9, 9);
        double total = 0.0;
        std::vector<double> w(4);
        for (auto& wi : w) {
            wi = sep_rng.uniform(0.05, 1.0);
            total += wi;
        }
        for (double wi : w)
            m = m + (wi / total) * kron(oracles::random_pure_state(3, sep_rng),
                                        oracles::random_pure_state(3, sep_rng));
        separable.emplace_back(HermitianMatrix(std::move(m)),
                               std::pair<std::size_t, std::size_t>{3, 3});
    }
    for (const MapParams& p : maps) {
        const Superoperator s = build_map(p);
        for (const DensityMatrix& rho : separable)
            if (min_eigval(apply_to_first_factor(s, rho)) < -1e-9) return false;
    }
    return true;
}

bool check_form_positivity() {
    const BiQuadraticForm scaled =
        scale_variables(choi_form(1.0), {1.6, 1.0, 1.0}, ScaleSide::x);
    const BiQuadraticForm osaka_form =
        form_from_map(build_map(MapParams::osaka(1.0, 6.0, 1.0 / 6.0)));
    for (const BiQuadraticForm* f : {&scaled, &osaka_form}) {
        if (numeric_min(*f, 64, 7).value < -1e-9) return false;
    }
    for (double mu : {1.0, 2.0}) {
        if (numeric_min(choi_form(mu), 64, 7).value < -1e-9) return false;
    }
    const FormMinimum touch = numeric_min(choi_form(1.0), 64, 7);
    if (touch.value >= 1e-6) return false;
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(std::abs(touch.x[i]) - inv_sqrt3) > 0.01) return false;
        if (std::abs(std::abs(touch.y[i]) - inv_sqrt3) > 0.01) return false;
    }
    return true;
}

bool check_eigensolver_against_oracle() {
    Rng rng(808);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + (rng.bits() % 8);
        const ComplexMatrix a = oracles::random_hermitian(n, rng);
        const auto ev = eigvals_hermitian(HermitianMatrix(a));
        const auto ref = oracles::eig_by_sturm_bisection(a);
        double scale = 1.0;
        for (double e : ref) scale = std::max(scale, std::abs(e));
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(ev[k] - ref[k]) > 1e-9 * scale) return false;
    }
    return true;
}

bool check_search_end_to_end() {
    SearchConfig cfg;  // detect osaka(1,6,1/6), reject choi1(1), default pattern
    cfg.seed = 1;
    cfg.max_iters = 500;
    const std::vector<SearchHit> hits = run_search(cfg);
    if (hits.empty()) return false;
    for (const SearchHit& h : hits) {
        if (!(h.candidate.residual < 1e-10)) return false;
        if (!(h.candidate.w_detect < 0.0)) return false;
        if (!(h.candidate.w_reject >= 0.0)) return false;
    }
    const std::vector<SearchHit> again = run_search(cfg);
    std::ostringstream a, b;
    write_candidates_csv(a, hits);
    write_candidates_csv(b, again);
    return a.str() == b.str();
}

bool check_factor_reconstruction() {
    for (double y : {0.5, 1.0, 2.5}) {
        const OsakaFamilyParams p{y};
        const ComplexMatrix rebuilt = (1.0 / p.normalization()) * t_factor_osaka(p).gram();
        if ((rebuilt - rho_osaka_family(p).matrix()).frobenius_norm() >= 1e-12) return false;
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "detection thresholds on the fixed-t section (0.604428 / 0.66, window open)",
              check_detection_thresholds_two_parameter_family);
    criterion(2, "detection thresholds on the one-parameter family (0.326402 / 0.369284)",
              check_detection_thresholds_one_parameter_family);
    criterion(3, "noise robustness (0.040..0.050 and 0.012 +- 0.003)", check_noise_robustness);
    criterion(4, "families stay PPT across the working grids", check_families_are_ppt);
    criterion(5, "map identities: bitwise coincidences and form coefficients",
              check_map_identities);
    criterion(6, "positive-map property on 10^4 pure and 10^3 separable inputs",
              check_positive_map_property);
    criterion(7, "form positivity and the touching zero of the base form",
              check_form_positivity);
    criterion(8, "eigensolver matches the Sturm-bisection oracle on 500 matrices",
              check_eigensolver_against_oracle);
    criterion(9, "seeded search yields reproducible accepted candidates",
              check_search_end_to_end);
    criterion(10, "triangular factor reconstructs the family states to 1e-12",
              check_factor_reconstruction);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
