#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "witnesskit/io.hpp"

using namespace witnesskit;

TEST_CASE("doubles render with 17 significant digits") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(-0.5) == "-0.5");
    CHECK(std::stod(format_double(-0.604428)) == -0.604428);  // exact round trip
}

TEST_CASE("map specs parse and render") {
    const MapParams m = parse_map_spec("osaka:1,6,0.16666666666666666");
    CHECK(m.variant == MapVariant::osaka);
    CHECK(m.p[1] == 6.0);
    CHECK(parse_map_spec(format_map(m)).p[2] == m.p[2]);

    CHECK(parse_map_spec("choi1:1").variant == MapVariant::choi_i);
    CHECK(parse_map_spec("choi2:1.5").p[0] == 1.5);
    CHECK(parse_map_spec("gen:1.6,1,1").variant == MapVariant::generalized);
    CHECK(parse_map_spec("transpose").dim == 3);
    CHECK(parse_map_spec("id:2").dim == 2);

    CHECK_THROWS_AS(parse_map_spec("nope:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_map_spec("choi1:1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_map_spec("choi1:abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_map_spec("choi1:0.5"), std::invalid_argument);  // mu < 1
}

TEST_CASE("key=value parsing") {
    std::istringstream in("# comment\n\n seed = 42 \nmap=osaka:1,6,0.2\n");
    const auto kv = parse_key_values(in);
    REQUIRE(kv.size() == 2);
    CHECK(kv[0].first == "seed");
    CHECK(kv[0].second == "42");
    CHECK(kv[1].second == "osaka:1,6,0.2");

    std::istringstream bad("no equals sign here\n");
    CHECK_THROWS_AS(parse_key_values(bad), std::invalid_argument);
}

TEST_CASE("pattern parsing round trips") {
    const auto def = t_factor_pattern();
    const auto parsed = parse_pattern(format_pattern(def));
    CHECK(parsed == def);
    CHECK_THROWS_AS(parse_pattern(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_pattern("1;2"), std::invalid_argument);
}

TEST_CASE("candidate csv layout") {
    // provenance + diagnostics + the 45 upper-triangular entries
    std::size_t commas = 0;
    for (char c : candidate_csv_header())
        if (c == ',') ++commas;
    CHECK(commas + 1 == 6 + 45);
}

TEST_CASE("curve csv shape") {
    std::ostringstream os;
    write_curve_csv(os, "x", MapParams::choi_i(1.0), {{0.0, 1.0}, {0.5, -1.0}});
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,lambda_min,map=choi1:1");
    std::getline(in, line);
    CHECK(line == "0,1");
    std::getline(in, line);
    CHECK(line == "0.5,-1");
}
