#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_runner.hpp"

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream stream(text);
    std::string line;
    bool first = true;
    while (std::getline(stream, line)) {
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ','))
            cells.push_back(cell);
        if (first) {
            table.header = cells;
            first = false;
        } else {
            table.rows.push_back(cells);
        }
    }
    return table;
}

} // namespace

TEST_CASE("visibility: csv sweep with the documented dip") {
    const CliResult r =
        run_cli("visibility --k 1 --omega-m 1 --periods 1 --samples 512 --format csv");
    REQUIRE(r.code == 0);
    const CsvTable table = parse_csv(r.out);
    CHECK(table.header ==
          std::vector<std::string>{"t", "visibility", "phase", "mirror_purity", "overlap_re",
                                   "overlap_im"});
    REQUIRE(table.rows.size() == 512);

    double min_v = 2.0;
    for (const auto& row : table.rows)
        min_v = std::min(min_v, std::stod(row[1]));
    CHECK(std::abs(min_v - std::exp(-2.0)) < 1e-4);
    CHECK(std::stod(table.rows.front()[1]) == doctest::Approx(1.0));
    CHECK(std::stod(table.rows.back()[1]) == doctest::Approx(1.0));
}

TEST_CASE("visibility: zero coupling keeps the contrast at one") {
    const CliResult r = run_cli("visibility --k 0 --samples 32 --format csv");
    REQUIRE(r.code == 0);
    for (const auto& row : parse_csv(r.out).rows)
        CHECK(std::stod(row[1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("visibility: gamma flag is read in units of 1/T_m") {
    const CliResult r = run_cli("visibility --k 1 --gamma 1.0 --periods 1 --samples 64");
    REQUIRE(r.code == 0);
    const CsvTable table = parse_csv(r.out);
    CHECK(std::abs(std::stod(table.rows.back()[1]) - std::exp(-1.0)) < 1e-6);
}

TEST_CASE("evolve-check: defect within tolerance, scriptable failure modes") {
    const CliResult ok = run_cli("evolve-check --k 1 --n-max 40 --samples 64 --format json");
    REQUIRE(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["defect"].get<double>() <= 1e-6);

    const CliResult free_case = run_cli("evolve-check --k 0 --samples 16 --format json");
    CHECK(free_case.code == 0);
    CHECK(nlohmann::json::parse(free_case.out)["defect"].get<double>() <= 1e-12);

    const CliResult small = run_cli("evolve-check --k 2 --n-max 10");
    CHECK(small.code == 3); // 16 + 24 > 10

    // an unreachable tolerance flips the exit code, not the output
    const CliResult strict = run_cli("evolve-check --k 1 --samples 16 --tolerance 1e-18");
    CHECK(strict.code == 1);
}

TEST_CASE("collapse: seeded frequencies match the Born weights") {
    const CliResult r = run_cli(
        "collapse --k 1 --t-over-tm 0.5 --draws 100000 --seed 42 --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto weights = j["weights"].get<std::vector<double>>();
    const auto counts = j["counts"].get<std::vector<std::size_t>>();
    const auto freqs = j["frequencies"].get<std::vector<double>>();
    REQUIRE(weights.size() == 2);
    CHECK(weights[0] == doctest::Approx(0.5));
    CHECK(counts[0] + counts[1] == 100000);
    CHECK(std::abs(freqs[0] - 0.5) < 0.00474); // 3 sigma at N = 1e5
    CHECK(std::abs(freqs[1] - 0.5) < 0.00474);
    CHECK(j["chi_square"].get<double>() >= 0.0);
}

TEST_CASE("collapse: overlapping packets trip the interference gate") {
    const CliResult r = run_cli("collapse --k 1 --t-over-tm 0.01 --draws 10");
    CHECK(r.code == 4);
}

TEST_CASE("collapse: a single draw still reports") {
    const CliResult r = run_cli("collapse --k 1 --t-over-tm 0.5 --draws 1 --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto counts = j["counts"].get<std::vector<std::size_t>>();
    CHECK(counts[0] + counts[1] == 1);
}

TEST_CASE("packet-check: ratio table and verdicts") {
    const CliResult displaced = run_cli("packet-check --alpha 5 --threshold 10 --format json");
    REQUIRE(displaced.code == 0);
    auto j = nlohmann::json::parse(displaced.out);
    CHECK(std::abs(j["ratios"]["X"].get<double>() - 10.0) < 1e-3);
    CHECK(j["ratios"]["P"].get<double>() < 1e-6);
    CHECK_FALSE(j["verdict"].get<bool>()); // the P-quadrature mean vanishes

    const CliResult vacuum = run_cli("packet-check --alpha 0 --format json");
    REQUIRE(vacuum.code == 0);
    j = nlohmann::json::parse(vacuum.out);
    CHECK(j["ratios"]["X"].get<double>() < 1e-8);
    CHECK_FALSE(j["verdict"].get<bool>());

    const CliResult both = run_cli("packet-check --alpha 5+5i --threshold 10 --format json");
    REQUIRE(both.code == 0);
    CHECK(nlohmann::json::parse(both.out)["verdict"].get<bool>());

    const CliResult cat = run_cli("packet-check --cat 5 --format json");
    REQUIRE(cat.code == 0);
    j = nlohmann::json::parse(cat.out);
    CHECK(j["ratios"]["X"].get<double>() < 1e-6);
    CHECK_FALSE(j["verdict"].get<bool>());

    CHECK(run_cli("packet-check --alpha fivish").code == 2);
    CHECK(run_cli("packet-check --alpha 2 --threshold 0.5").code == 2);
}

TEST_CASE("discriminate: verdicts map to distinct exit codes") {
    const CliResult relative = run_cli("discriminate --k 1.5 --format json");
    CHECK(relative.code == 0);
    auto j = nlohmann::json::parse(relative.out);
    CHECK(j["verdict"] == "RelativeDecoherence");
    CHECK(std::abs(j["mid_visibility"].get<double>() - std::exp(-4.5)) < 1e-6);
    CHECK(j["revival_visibility"].get<double>() >= 0.99);

    const CliResult absolute = run_cli("discriminate --k 1.5 --gamma 2.0 --format json");
    CHECK(absolute.code == 5);
    j = nlohmann::json::parse(absolute.out);
    CHECK(j["verdict"] == "AbsoluteDecoherence");
    CHECK(std::abs(j["revival_visibility"].get<double>() - std::exp(-2.0)) < 1e-6);

    const CliResult inconclusive =
        run_cli("discriminate --k 1 --suppression-tol 0.1 --format json");
    CHECK(inconclusive.code == 6);
    CHECK(nlohmann::json::parse(inconclusive.out)["verdict"] == "Inconclusive");

    CHECK(run_cli("discriminate --k 0.5").code == 2); // distinguishability gate
}

TEST_CASE("identical flags and seed give byte-identical output") {
    const std::string flags =
        "collapse --k 1 --t-over-tm 0.5 --draws 5000 --seed 7 --format json";
    CHECK(run_cli(flags).out == run_cli(flags).out);

    const std::string sweep = "visibility --k 1.3 --samples 128 --format csv";
    CHECK(run_cli(sweep).out == run_cli(sweep).out);
}

TEST_CASE("json output echoes a round-trippable config") {
    const CliResult r = run_cli(
        "visibility --k 1.25 --omega-m 2 --gamma 0.5 --samples 16 --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["command"] == "visibility");
    CHECK(j["config"]["k"].get<double>() == doctest::Approx(1.25));
    CHECK(j["config"]["omega_m"].get<double>() == doctest::Approx(2.0));
    CHECK(j["config"]["samples"].get<int>() == 16);
    // gamma echoed as the absolute rate: 0.5 / T_m = 0.5 * omega_m / (2 pi)
    CHECK(j["config"]["gamma"].get<double>() ==
          doctest::Approx(0.5 * 2.0 / (2.0 * std::numbers::pi)));
    CHECK(j["t"].size() == 16);
}

TEST_CASE("config file entries load and flags take precedence") {
    const std::string path = "/tmp/mirrorsim_cli_test_config.ini";
    {
        std::ofstream file(path);
        file << "k=0.5\n";
    }
    // config alone: k = 0.5 fails the distinguishability gate
    CHECK(run_cli("discriminate --config " + path).code == 2);
    // explicit flag overrides the config entry
    CHECK(run_cli("discriminate --config " + path + " --k 1.5").code == 0);
    std::remove(path.c_str());
}

TEST_CASE("output lands in a file when requested") {
    const std::string path = "/tmp/mirrorsim_cli_test_curve.csv";
    const std::string flags = "visibility --k 1 --samples 32 --format csv";
    const CliResult direct = run_cli(flags);
    const CliResult filed = run_cli(flags + " -o " + path);
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream file(path, std::ios::binary);
    std::stringstream content;
    content << file.rdbuf();
    CHECK(content.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("visibility --samples 1").code == 2);
    CHECK(run_cli("no-such-command").code == 2);
    CHECK(run_cli("visibility --no-such-flag 3").code == 2);
}
