// witnesskit command-line front end.
//
// Subcommands: sweep, section, threshold, robustness, witness, search,
// form-check, verify-state. Results go to stdout as CSV or single values;
// diagnostics go to stderr. Exit codes: 0 success, 1 usage error,
// 2 numeric failure.
//
// A key=value config file can pre-set any long flag of the chosen
// subcommand (--config PATH); flags given on the command line win. The
// WITNESSKIT_SEED environment variable supplies the default seed.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "witnesskit/witnesskit.hpp"

namespace {

using namespace witnesskit;

struct AxisArg {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 0;  // 0: bracket only
};

AxisArg parse_axis(const std::string& text, bool need_steps) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3 && parts.size() != 4)
        throw CLI::ValidationError("--vary", "expected name:lo:hi[:steps], got '" + text + "'");
    AxisArg a;
    a.name = parts[0];
    a.lo = std::stod(parts[1]);
    a.hi = std::stod(parts[2]);
    if (parts.size() == 4) a.steps = std::stoul(parts[3]);
    if (need_steps && a.steps < 2)
        throw CLI::ValidationError("--vary", "axis '" + text + "' needs steps >= 2");
    return a;
}

ParamMap parse_fixed(const std::vector<std::string>& fixes) {
    ParamMap out;
    for (const std::string& f : fixes) {
        const auto eq = f.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--fix", "expected key=value, got '" + f + "'");
        out[f.substr(0, eq)] = std::stod(f.substr(eq + 1));
    }
    return out;
}

Family parse_family(const std::string& name) {
    if (name == "choi") return Family::choi;
    if (name == "osaka") return Family::osaka;
    throw CLI::ValidationError("--family", "unknown family '" + name + "' (choi, osaka)");
}

DensityMatrix state_from_flags(Family fam, std::optional<double> x, std::optional<double> t,
                               std::optional<double> y) {
    if (fam == Family::choi) {
        if (!x || !t) throw CLI::ValidationError("--family", "choi family needs --x and --t");
        return rho_choi_family({*x, *t});
    }
    if (!y) throw CLI::ValidationError("--family", "osaka family needs --y");
    return rho_osaka_family({*y});
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("WITNESSKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring non-numeric WITNESSKIT_SEED\n";
        }
    }
    return 1;
}

// Merge key=value pairs from the config file into the argument list for
// flags the user did not pass explicitly.
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw CLI::ValidationError("--config", "missing file path");
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open '" + config_path + "'");
    for (const auto& [key, value] : parse_key_values(in)) {
        const std::string flag = "--" + key;
        bool present = false;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                present = true;
                break;
            }
        if (!present) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

struct Cli {
    CLI::App app{"Positive-map entanglement witnesses, PPT-entangled state "
                 "families, and the searches and sweeps behind them"};

    // shared option storage
    std::string family_name = "choi";
    std::string map_spec = "choi1:1";
    std::vector<std::string> vary;
    std::vector<std::string> fixes;
    std::optional<double> x, t, y;
    double tol = 1e-6;
    std::size_t jobs = 1;
    std::uint64_t seed = default_seed();

    // search options
    std::string pattern_text = format_pattern(t_factor_pattern());
    std::size_t iters = 500;
    double residual_tol = 1e-10;
    std::string detect_spec = "osaka:1,6,0.16666666666666666";
    std::string reject_spec = "choi1:1";
    std::string range_text = "-1:1";
    std::string ledger_path;

    // form-check options
    std::string form_name = "choi";
    double mu = 1.0;
    std::string scale_text = "1.6,1,1";
    std::string osaka_text = "1,6,0.16666666666666666";
    std::size_t starts = 64;

    CLI::App* cmd_sweep = nullptr;
    CLI::App* cmd_section = nullptr;
    CLI::App* cmd_threshold = nullptr;
    CLI::App* cmd_robustness = nullptr;
    CLI::App* cmd_witness = nullptr;
    CLI::App* cmd_search = nullptr;
    CLI::App* cmd_form_check = nullptr;
    CLI::App* cmd_verify = nullptr;

    Cli() {
        app.require_subcommand(1);

        auto add_family = [this](CLI::App* c, bool with_map) {
            c->add_option("--family", family_name, "state family: choi or osaka")
                ->capture_default_str();
            if (with_map)
                c->add_option("--map", map_spec,
                              "map spec name:params (choi1, choi2, osaka, gen, transpose, id)")
                    ->capture_default_str();
        };
        auto add_state_params = [this](CLI::App* c) {
            c->add_option("--x", x, "family parameter x (choi family)");
            c->add_option("--t", t, "family parameter t (choi family)");
            c->add_option("--y", y, "family parameter y (osaka family)");
        };

        cmd_sweep = app.add_subcommand("sweep", "two-axis minimum-eigenvalue surface as CSV");
        add_family(cmd_sweep, true);
        cmd_sweep->add_option("--vary", vary, "axis as name:lo:hi:steps (exactly twice)")
            ->expected(2);
        cmd_sweep->add_option("--fix", fixes, "fixed parameter key=value");
        cmd_sweep->add_option("--jobs", jobs, "worker cap")->capture_default_str();

        cmd_section = app.add_subcommand("section", "one-axis minimum-eigenvalue curve as CSV");
        add_family(cmd_section, true);
        cmd_section->add_option("--vary", vary, "axis as name:lo:hi:steps")->expected(1);
        cmd_section->add_option("--fix", fixes, "fixed parameter key=value");
        cmd_section->add_option("--jobs", jobs, "worker cap")->capture_default_str();

        cmd_threshold = app.add_subcommand(
            "threshold", "bisection of the detection-score sign crossing in a bracket");
        add_family(cmd_threshold, true);
        cmd_threshold->add_option("--vary", vary, "bracket as name:lo:hi")->expected(1);
        cmd_threshold->add_option("--fix", fixes, "fixed parameter key=value");
        cmd_threshold->add_option("--tol", tol, "bisection tolerance")->capture_default_str();

        cmd_robustness = app.add_subcommand(
            "robustness", "white-noise fraction up to which the state stays detected");
        add_family(cmd_robustness, true);
        add_state_params(cmd_robustness);
        cmd_robustness->add_option("--tol", tol, "bisection tolerance")->capture_default_str();

        cmd_witness = app.add_subcommand(
            "witness", "witness trace and mapped eigenvalues for one family state");
        add_family(cmd_witness, true);
        add_state_params(cmd_witness);

        cmd_search = app.add_subcommand(
            "search", "randomized PT-invariant factor search; accepted candidates as CSV");
        cmd_search->add_option("--pattern", pattern_text, "factor positions r,c;r,c;...")
            ->capture_default_str();
        cmd_search->add_option("--seed", seed, "master seed")->capture_default_str();
        cmd_search->add_option("--iters", iters, "search iterations")->capture_default_str();
        cmd_search->add_option("--tol", residual_tol, "PT residual tolerance")
            ->capture_default_str();
        cmd_search->add_option("--detect", detect_spec, "detect map spec")
            ->capture_default_str();
        cmd_search->add_option("--reject", reject_spec, "reject map spec")
            ->capture_default_str();
        cmd_search->add_option("--range", range_text, "initial value range lo:hi")
            ->capture_default_str();
        cmd_search->add_option("--ledger", ledger_path, "CSV file to append candidates to");
        cmd_search->add_option("--jobs", jobs, "worker cap")->capture_default_str();

        cmd_form_check = app.add_subcommand(
            "form-check", "multi-start numeric minimum of a bi-quadratic form");
        cmd_form_check->add_option("--form", form_name, "form: choi, gen or osaka")
            ->capture_default_str();
        cmd_form_check->add_option("--mu", mu, "parameter of the choi form")
            ->capture_default_str();
        cmd_form_check->add_option("--scale", scale_text, "a,b,c scales of the gen form")
            ->capture_default_str();
        cmd_form_check->add_option("--params", osaka_text, "x,y,z parameters of the osaka form")
            ->capture_default_str();
        cmd_form_check->add_option("--starts", starts, "descent starts")->capture_default_str();
        cmd_form_check->add_option("--seed", seed, "seed")->capture_default_str();

        cmd_verify = app.add_subcommand(
            "verify-state", "trace, spectrum floor and PPT status of a family state");
        add_family(cmd_verify, false);
        add_state_params(cmd_verify);
        cmd_verify->add_option("--tol", tol, "PSD tolerance")->capture_default_str();
    }
};

std::vector<double> parse_csv_doubles(const std::string& text, std::size_t count,
                                      const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.size() != count)
        throw CLI::ValidationError(what, "expected " + std::to_string(count) + " numbers");
    return out;
}

int run_sweep(Cli& cli, bool surface) {
    const Family fam = parse_family(cli.family_name);
    const MapParams map = parse_map_spec(cli.map_spec);
    const ParamMap fixed = parse_fixed(cli.fixes);
    if (surface) {
        SweepSpec spec;
        spec.family = fam;
        spec.map = map;
        const AxisArg a1 = parse_axis(cli.vary.at(0), true);
        const AxisArg a2 = parse_axis(cli.vary.at(1), true);
        spec.axis1 = {a1.name, a1.lo, a1.hi, a1.steps};
        spec.axis2 = {a2.name, a2.lo, a2.hi, a2.steps};
        spec.fixed = fixed;
        write_surface_csv(std::cout, min_eig_surface(spec, cli.jobs));
    } else {
        const AxisArg a = parse_axis(cli.vary.at(0), true);
        const auto curve =
            min_eig_curve(fam, map, {a.name, a.lo, a.hi, a.steps}, fixed, cli.jobs);
        write_curve_csv(std::cout, a.name, map, curve);
    }
    return 0;
}

// Crossing locations are printed at six decimals, matching the default
// bisection tolerance of 1e-6 in parameter units.
std::string format_crossing(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

int run_threshold(Cli& cli) {
    const Family fam = parse_family(cli.family_name);
    const MapParams map = parse_map_spec(cli.map_spec);
    const AxisArg a = parse_axis(cli.vary.at(0), false);
    const auto f = detection_score_fn(fam, map, a.name, parse_fixed(cli.fixes));
    std::cout << format_crossing(threshold(f, a.lo, a.hi, cli.tol)) << "\n";
    return 0;
}

int run_robustness(Cli& cli) {
    const Family fam = parse_family(cli.family_name);
    const DensityMatrix rho = state_from_flags(fam, cli.x, cli.t, cli.y);
    std::cout << format_crossing(
                     robustness_threshold(rho, parse_map_spec(cli.map_spec), cli.tol))
              << "\n";
    return 0;
}

int run_witness(Cli& cli) {
    const Family fam = parse_family(cli.family_name);
    const DensityMatrix rho = state_from_flags(fam, cli.x, cli.t, cli.y);
    const Superoperator s = build_map(parse_map_spec(cli.map_spec));
    const double w = witness_value(cj_witness(s), rho);
    const double eig_first = min_eigval(apply_to_first_factor(s, rho));
    const double score = detection_min_eig(s, rho);
    std::cout << "w_value,min_eig_mapped,detection_score\n"
              << format_double(w) << "," << format_double(eig_first) << ","
              << format_double(score) << "\n";
    return 0;
}

int run_search_cmd(Cli& cli) {
    SearchConfig cfg;
    cfg.pattern = parse_pattern(cli.pattern_text);
    cfg.seed = cli.seed;
    cfg.max_iters = cli.iters;
    cfg.residual_tol = cli.residual_tol;
    cfg.witness_detect = parse_map_spec(cli.detect_spec);
    cfg.witness_reject = parse_map_spec(cli.reject_spec);
    const auto colon = cli.range_text.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--range", "expected lo:hi");
    cfg.value_range = {std::stod(cli.range_text.substr(0, colon)),
                       std::stod(cli.range_text.substr(colon + 1))};

    const std::vector<SearchHit> hits = run_search(cfg, cli.jobs);
    write_candidates_csv(std::cout, hits);
    std::cerr << hits.size() << " candidate(s) from " << cfg.max_iters << " iteration(s)\n";

    if (!cli.ledger_path.empty()) {
        const bool fresh = !std::filesystem::exists(cli.ledger_path) ||
                           std::filesystem::file_size(cli.ledger_path) == 0;
        std::ofstream ledger(cli.ledger_path, std::ios::app);
        if (!ledger) throw std::runtime_error("cannot open ledger '" + cli.ledger_path + "'");
        write_candidates_csv(ledger, hits, fresh);
    }
    return 0;
}

int run_form_check(Cli& cli) {
    BiQuadraticForm form(3, 3);
    if (cli.form_name == "choi") {
        form = choi_form(cli.mu);
    } else if (cli.form_name == "gen") {
        const auto s = parse_csv_doubles(cli.scale_text, 3, "--scale");
        form = scale_variables(choi_form(1.0), s, ScaleSide::x);
    } else if (cli.form_name == "osaka") {
        const auto p = parse_csv_doubles(cli.osaka_text, 3, "--params");
        form = form_from_map(build_map(MapParams::osaka(p[0], p[1], p[2])));
    } else {
        throw CLI::ValidationError("--form", "unknown form '" + cli.form_name + "'");
    }
    const FormMinimum m = numeric_min(form, cli.starts, cli.seed);
    std::cout << "min,x1,x2,x3,y1,y2,y3\n" << format_double(m.value);
    for (double v : m.x) std::cout << "," << format_double(v);
    for (double v : m.y) std::cout << "," << format_double(v);
    std::cout << "\n";
    return 0;
}

int run_verify_state(Cli& cli) {
    const Family fam = parse_family(cli.family_name);
    const DensityMatrix rho = state_from_flags(fam, cli.x, cli.t, cli.y);
    const double floor = min_eigval(rho.hermitian());
    const double pt_floor = min_eigval(HermitianMatrix(partial_transpose(rho)));
    std::cout << "trace,min_eig,pt_min_eig,ppt\n"
              << format_double(rho.matrix().trace().real()) << "," << format_double(floor)
              << "," << format_double(pt_floor) << ","
              << (is_ppt(rho, cli.tol) ? "true" : "false") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    std::vector<std::string> args;
    try {
        args = merge_config(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    // CLI11's string-vector parse expects the arguments reversed
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        cli.app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return cli.app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (cli.cmd_sweep->parsed()) return run_sweep(cli, true);
        if (cli.cmd_section->parsed()) return run_sweep(cli, false);
        if (cli.cmd_threshold->parsed()) return run_threshold(cli);
        if (cli.cmd_robustness->parsed()) return run_robustness(cli);
        if (cli.cmd_witness->parsed()) return run_witness(cli);
        if (cli.cmd_search->parsed()) return run_search_cmd(cli);
        if (cli.cmd_form_check->parsed()) return run_form_check(cli);
        if (cli.cmd_verify->parsed()) return run_verify_state(cli);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "no subcommand given\n";
    return 1;
}
