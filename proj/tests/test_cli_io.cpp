#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cpc/cli.hpp"
#include "cpc/circuits.hpp"
#include "cpc/serialize.hpp"

using namespace cpc;
using doctest::Approx;

namespace {

namespace fs = std::filesystem;

const fs::path kOut = fs::path("cli_io_test_output");

struct OutputDir {
    OutputDir() {
        fs::remove_all(kOut);
        fs::create_directories(kOut);
    }
};

int call(std::vector<std::string> args) {
    static OutputDir dir;  // fresh directory once per binary run
    std::vector<const char*> argv = {"cpcsim"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const fs::path& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("theta flags accept radians and pi-suffixed forms") {
    CHECK(parse_theta_flag("0.5pi") ==
          Approx(parse_theta_flag("1.5707963267948966")).epsilon(1e-15));
    CHECK(parse_theta_flag("2pi") == Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(parse_theta_flag("-0.25pi") == Approx(-0.25 * std::numbers::pi).epsilon(1e-15));
    CHECK(parse_theta_flag("1.25") == Approx(1.25).epsilon(1e-15));
    CHECK_THROWS_AS(parse_theta_flag("half a pie"), std::invalid_argument);
    CHECK_THROWS_AS(parse_theta_pi_suffixed("0.5"), std::invalid_argument);
    CHECK(parse_theta_pi_suffixed(format_theta_pi(1.234567890123)) ==
          Approx(1.234567890123).epsilon(1e-15));
}

TEST_CASE("evolve subcommand emits the converted state") {
    const auto out = kOut / "evolve.json";
    REQUIRE(call({"evolve", "--input", "100", "--theta", "0.5pi", "--output", out.string()}) == 0);
    const auto doc = load_json(out);
    CHECK(doc.at("manifest").at("tool") == "cpcsim");
    CHECK(doc.at("manifest").at("config").at("theta") == "0.5pi");

    auto state = state_from_json(doc.at("result").at("state"));
    FockBasisVector converted({{"b", 1}, {"c", 1}});
    CHECK(state.probability(converted) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unknown subcommand and flags exit with code 2") {
    CHECK(call({"frobnicate"}) == 2);
    CHECK(call({"evolve", "--no-such-flag", "1"}) == 2);
    CHECK(!fs::exists(kOut / "frobnicate.json"));
}

TEST_CASE("revival scan CSV contains the |2> peak") {
    const auto out = kOut / "scan.csv";
    REQUIRE(call({"revival-scan", "--n", "2", "--theta-max", "2", "--output", out.string()}) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# manifest:", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "theta_over_pi,transmission");
    bool found = false;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double theta = std::stod(line.substr(0, comma));
        const double transmission = std::stod(line.substr(comma + 1));
        if (std::abs(theta - 0.816496580927726) < 1e-4 && transmission > 1.0 - 1e-9) found = true;
    }
    CHECK(found);
}

TEST_CASE("detector-cascade output is deterministic for a fixed seed") {
    const auto out1 = kOut / "cascade1.json";
    const auto out2 = kOut / "cascade2.json";
    const std::vector<std::string> base = {"detector-cascade", "--depth", "2",    "--k",
                                           "2",                "--eta",   "0.5",  "--dark",
                                           "0.01",             "--trials", "20000", "--seed",
                                           "7"};
    auto args1 = base;
    args1.insert(args1.end(), {"--output", out1.string()});
    auto args2 = base;
    args2.insert(args2.end(), {"--output", out2.string()});
    REQUIRE(call(args1) == 0);
    REQUIRE(call(args2) == 0);

    auto doc1 = load_json(out1);
    auto doc2 = load_json(out2);
    doc1.at("manifest").erase("duration_ms");
    doc2.at("manifest").erase("duration_ms");
    CHECK(doc1.dump() == doc2.dump());
    CHECK(doc1.at("result").at("monte_carlo").at("rng") == "splitmix64");
    CHECK(doc1.at("result").at("monte_carlo").at("seed") == 7);
}

TEST_CASE("heralded-source subcommand reports both efficiency definitions") {
    const auto out = kOut / "source.json";
    REQUIRE(call({"heralded-source", "--alpha-sq", "1.5", "--steps", "5", "--theta", "1pi",
                  "--output", out.string()}) == 0);
    const auto result = load_json(out).at("result");
    CHECK(result.at("production_efficiency").get<double>() == Approx(0.592).epsilon(2e-3));
    CHECK(result.at("absolute_efficiency").get<double>() == Approx(0.337).epsilon(2e-3));
    CHECK(result.at("higher_order_mass").get<double>() < 0.01);
    CHECK(result.at("pre_herald_higher_order_mass").get<double>() < 0.03);
}

TEST_CASE("calibrate subcommand") {
    const auto params = kOut / "params.json";
    {
        std::ofstream out(params);
        out << R"({"pair_rate_per_s_per_mW": 1.45, "input_flux_per_s": 1.52e13,
                   "arm_transmission_1": 0.026, "arm_transmission_2": 0.146})";
    }
    const auto out = kOut / "calibration.json";
    REQUIRE(call({"calibrate", "--params", params.string(), "--power", "1000", "--output",
                  out.string()}) == 0);
    const auto result = load_json(out).at("result");
    CHECK(result.at("kappa_per_sqrt_mw").get<double>() == Approx(5.0e-6).epsilon(0.1));
    CHECK(result.at("theta_at_pump").get<double>() == Approx(1.585e-4).epsilon(1e-2));
    CHECK(result.at("small_angle_ok").get<bool>());
    CHECK(result.at("note").get<std::string>().find("transmission") != std::string::npos);
}

TEST_CASE("circuit-run round trip through a saved cascade") {
    auto cascade = build_doubling_cascade(2, CascadeMethod::frequency_conversion);
    const auto file = kOut / "cascade_circuit.json";
    save_circuit_file(cascade.circuit, file.string());

    auto loaded = load_circuit_file(file.string());
    int gates = 0;
    for (const auto& e : loaded.elements)
        if (std::holds_alternative<CpcGate>(e)) ++gates;
    CHECK(gates == 3 * ((1 << 2) - 1));

    const auto out = kOut / "circuit_run.json";
    REQUIRE(call({"circuit-run", "--circuit", file.string(), "--input",
                  cascade.input_mode + ":1", "--output", out.string()}) == 0);
    const auto result = load_json(out).at("result");
    CHECK(result.at("success_probability").get<double>() == Approx(1.0).epsilon(1e-10));
    CHECK(!result.at("failed").get<bool>());

    auto final_state = state_from_json(result.at("final_state"));
    std::map<std::string, int> expected;
    for (const auto& m : cascade.output_modes) expected[m] = 1;
    CHECK(final_state.probability(FockBasisVector(expected)) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("shipped example circuit loads") {
    const fs::path example =
        fs::path(CPCSIM_SOURCE_DIR) / "docs" / "examples" / "doubling_cascade_depth2.json";
    auto circuit = load_circuit_file(example.string());
    int gates = 0;
    for (const auto& e : circuit.elements)
        if (std::holds_alternative<CpcGate>(e)) ++gates;
    CHECK(gates == 3 * ((1 << 2) - 1));
}

TEST_CASE("bad circuit file exits with a parse diagnostic") {
    const auto file = kOut / "bad_circuit.json";
    {
        std::ofstream out(file);
        out << R"({"modes": ["a"], "elements": [{"kind": "herald", "mode": "zz", "occupation": 1}]})";
    }
    const auto out = kOut / "bad_run.json";
    CHECK(call({"circuit-run", "--circuit", file.string(), "--input", "a:1", "--output",
                out.string()}) == 1);
    CHECK(!fs::exists(out));

    CHECK_THROWS_WITH_AS(load_circuit_file(file.string()),
                         doctest::Contains("zz"), CircuitParseError);
}

TEST_CASE("population trace via the evolve subcommand") {
    const auto out = kOut / "trace.csv";
    REQUIRE(call({"evolve", "--n", "1", "--theta-max", "1pi", "--samples", "11", "--format",
                  "csv", "--output", out.string()}) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);  // manifest
    std::getline(lines, line);
    CHECK(line == "theta_over_pi,probability");
    int rows = 0;
    double last_theta = -1.0, last_p = -1.0;
    while (std::getline(lines, line)) {
        ++rows;
        const auto comma = line.find(',');
        last_theta = std::stod(line.substr(0, comma));
        last_p = std::stod(line.substr(comma + 1));
    }
    CHECK(rows == 11);
    CHECK(last_theta == Approx(1.0));          // endpoint included
    CHECK(last_p == Approx(1.0).epsilon(1e-10));  // cos^2(pi)
}
