// io.hpp
// Text formats: CSV emission at 17 significant digits, plain key=value
// config files, and the map mini-grammar "name:p1,p2,..." used by the CLI
// and by search configs.

#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "search.hpp"
#include "witness_maps.hpp"

namespace witnesskit {

/// Shortest-round-trip style decimal rendering, 17 significant digits.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_map(const MapParams& m) {
    switch (m.variant) {
        case MapVariant::choi_i:
        case MapVariant::choi_ii:
            return m.name() + ":" + format_double(m.p[0]);
        case MapVariant::osaka:
        case MapVariant::generalized:
            return m.name() + ":" + format_double(m.p[0]) + "," + format_double(m.p[1]) +
                   "," + format_double(m.p[2]);
        case MapVariant::transpose:
        case MapVariant::identity:
            return m.name() + ":" + std::to_string(m.dim);
    }
    return m.name();
}

/// Parse "name[:p1[,p2,...]]" with names choi1, choi2, osaka, gen,
/// transpose, id.
inline MapParams parse_map_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t used = 0;
                params.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad numeric parameter '" + tok +
                                            "' in map spec '" + spec + "'");
            }
        }
    }
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("map '" + name + "' takes " + std::to_string(n) +
                                        " parameter(s)");
    };
    MapParams m;
    if (name == "choi1") {
        want(1);
        m = MapParams::choi_i(params[0]);
    } else if (name == "choi2") {
        want(1);
        m = MapParams::choi_ii(params[0]);
    } else if (name == "osaka") {
        want(3);
        m = MapParams::osaka(params[0], params[1], params[2]);
    } else if (name == "gen") {
        want(3);
        m = MapParams::generalized(params[0], params[1], params[2]);
    } else if (name == "transpose" || name == "id") {
        std::size_t d = 3;
        if (params.size() == 1) {
            d = static_cast<std::size_t>(params[0]);
        } else if (!params.empty()) {
            throw std::invalid_argument("map '" + name + "' takes at most one parameter");
        }
        m = (name == "transpose") ? MapParams::transpose(d) : MapParams::identity(d);
    } else {
        throw std::invalid_argument("unknown map '" + name +
                                    "' (choi1, choi2, osaka, gen, transpose, id)");
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// key=value config files
// ---------------------------------------------------------------------------

/// Parse "key=value" lines. Blank lines and lines starting with '#' are
/// skipped; whitespace around keys and values is trimmed.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(
    std::istream& in) {
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key=value: '" + t + "'");
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

/// Parse a search pattern "r,c;r,c;..." of upper-triangular positions.
inline std::vector<std::pair<std::size_t, std::size_t>> parse_pattern(
    const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("pattern entry '" + item + "' is not r,c");
        out.emplace_back(std::stoul(item.substr(0, comma)),
                         std::stoul(item.substr(comma + 1)));
    }
    if (out.empty()) throw std::invalid_argument("empty search pattern");
    return out;
}

inline std::string format_pattern(
    const std::vector<std::pair<std::size_t, std::size_t>>& pattern) {
    std::string s;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
        if (k) s += ';';
        s += std::to_string(pattern[k].first) + "," + std::to_string(pattern[k].second);
    }
    return s;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

inline void write_curve_csv(std::ostream& os, const std::string& axis_name,
                            const MapParams& map,
                            const std::vector<std::pair<double, double>>& curve) {
    os << axis_name << ",lambda_min,map=" << format_map(map) << "\n";
    for (const auto& [v, lm] : curve)
        os << format_double(v) << "," << format_double(lm) << "\n";
}

inline void write_surface_csv(std::ostream& os, const SweepResult& res) {
    os << res.spec.axis1.name << "," << res.spec.axis2.name << ",lambda_min,map="
       << format_map(res.spec.map) << ",family=" << family_name(res.spec.family) << "\n";
    for (std::size_t i = 0; i < res.axis1_values.size(); ++i)
        for (std::size_t j = 0; j < res.axis2_values.size(); ++j)
            os << format_double(res.axis1_values[i]) << ","
               << format_double(res.axis2_values[j]) << ","
               << format_double(res.lambda_min[i * res.axis2_values.size() + j]) << "\n";
}

inline std::string candidate_csv_header() {
    std::string h = "iter,seed,residual,w_detect,w_reject,min_eig_detect";
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i; j < 9; ++j)
            h += ",t" + std::to_string(i) + std::to_string(j);
    return h;
}

/// One ledger row per accepted candidate: provenance, diagnostics, then
/// the 45 upper-triangular entries of T.
inline void write_candidates_csv(std::ostream& os, const std::vector<SearchHit>& hits,
                                 bool with_header = true) {
    if (with_header) os << candidate_csv_header() << "\n";
    for (const SearchHit& h : hits) {
        os << h.iteration << "," << h.seed << "," << format_double(h.candidate.residual)
           << "," << format_double(h.candidate.w_detect) << ","
           << format_double(h.candidate.w_reject) << ","
           << format_double(h.candidate.min_eig_detect);
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = i; j < 9; ++j)
                os << "," << format_double(h.candidate.t(i, j).real());
        os << "\n";
    }
}

}  // namespace witnesskit
