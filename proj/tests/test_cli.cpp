// End-to-end checks of the command-line binary: spawn it, capture stdout
// and the exit code.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef WITNESSKIT_CLI_PATH
#error "WITNESSKIT_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(WITNESSKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

double first_value(const std::string& text) { return std::stod(text); }

}  // namespace

TEST_CASE("threshold subcommand reproduces the detection onset") {
    const RunResult r =
        run_cli("threshold --family choi --map gen:1.6,1,1 --fix t=0.05 --vary x:0.5:0.7");
    REQUIRE(r.exit_code == 0);
    const double v = first_value(r.out);
    CHECK(v >= 0.599);
    CHECK(v <= 0.610);
}

TEST_CASE("robustness subcommand output range") {
    const RunResult r =
        run_cli("robustness --family osaka --y 2.5 --map osaka:1,6,0.1666666666666667");
    REQUIRE(r.exit_code == 0);
    const double v = first_value(r.out);
    CHECK(v >= 0.040);
    CHECK(v <= 0.050);
}

TEST_CASE("form-check subcommand reports a nonnegative minimum") {
    const RunResult r = run_cli("form-check --form choi --mu 1 --starts 64 --seed 7");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "min,x1,x2,x3,y1,y2,y3");
    CHECK(first_value(row) >= -1e-9);
}

TEST_CASE("byte-identical output for identical invocations") {
    const std::string cmd =
        "search --seed 5 --iters 8";
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const RunResult seq = run_cli(cmd + " --jobs 1");
    const RunResult par = run_cli(cmd + " --jobs 4");
    CHECK(seq.out == par.out);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("threshold --no-such-flag").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("sweep --family choi --map gen:1.6,1,1 --vary x:0:1:5").exit_code == 1);
}

TEST_CASE("numeric failures exit with code 2") {
    // no sign change anywhere on the section for this map
    const RunResult r =
        run_cli("threshold --family choi --map choi2:1 --fix t=0.05 --vary x:0:1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("config file fills flags and the command line overrides it") {
    const std::string path = "/tmp/witnesskit_cli_test_config.txt";
    {
        std::ofstream cfg(path);
        cfg << "family=choi\nmap=gen:1.6,1,1\nvary=x:0.5:0.7\nfix=t=0.05\n";
    }
    const RunResult base = run_cli("threshold --config " + path);
    REQUIRE(base.exit_code == 0);
    CHECK(first_value(base.out) == Catch::Approx(0.604428).margin(0.003));

    const RunResult overridden = run_cli("threshold --config " + path + " --map choi1:1");
    REQUIRE(overridden.exit_code == 0);
    CHECK(first_value(overridden.out) == Catch::Approx(0.6555).margin(0.003));
    std::remove(path.c_str());
}

TEST_CASE("environment variable seeds the search by default") {
    const std::string cmd = std::string("WITNESSKIT_SEED=5 ") + WITNESSKIT_CLI_PATH +
                            " search --iters 8 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    pclose(pipe);
    CHECK(out == run_cli("search --seed 5 --iters 8").out);
}

TEST_CASE("section emits one row per grid point") {
    const RunResult r = run_cli(
        "section --family osaka --map osaka:1,6,0.16666666666666666 --vary y:0.3:0.4:5");
    REQUIRE(r.exit_code == 0);
    std::size_t lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 6);  // header + 5 rows
}

TEST_CASE("search ledger file accumulates without repeating the header") {
    const std::string path = "/tmp/witnesskit_cli_test_ledger.csv";
    std::remove(path.c_str());
    run_cli("search --seed 7 --iters 6 --ledger " + path);
    run_cli("search --seed 8 --iters 6 --ledger " + path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::size_t headers = 0, rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind("iter,", 0) == 0)
            ++headers;
        else if (!line.empty())
            ++rows;
    }
    CHECK(headers == 1);
    CHECK(rows >= 1);
    std::remove(path.c_str());
}
