#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "spinrus/commands.hpp"

using namespace spinrus;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("spinrus_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("config rejects unknown fields and bad values") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"n_suplementary", 2}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"grid_points", "lots"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"time_window", {1.0}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"topology", "ring"}}), ConfigError);

    RunConfig bad;
    bad.trajectories = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    RunConfig coarse;
    coarse.grid_points = 100;
    CHECK_THROWS_AS(coarse.validate(), ConfigError);
}

TEST_CASE("config defaults") {
    const RunConfig cfg = config_from_json(nlohmann::json::object());
    CHECK(cfg.network.coupling == 1.0);
    CHECK(cfg.network.anisotropy == 1.0);
    CHECK(cfg.network.field_uniform == 0.0);
    CHECK(cfg.network.field_center_extra == 0.0);
    CHECK(cfg.master_seed == 1);
}

TEST_CASE("config round-trips through its canonical form") {
    nlohmann::json j{{"n_supplementary", 4},
                     {"m_target", 4},
                     {"anisotropy", 0.5},
                     {"trajectories", 250},
                     {"time_window", {0.1, 2.5}},
                     {"master_seed", 99}};
    const RunConfig cfg = config_from_json(j);
    const std::string canonical = canonical_config(cfg);
    const RunConfig reparsed = config_from_json(nlohmann::json::parse(canonical));
    CHECK(canonical_config(reparsed) == canonical);
    CHECK(reparsed.network.anisotropy == 0.5);
    CHECK(reparsed.window_lo == 0.1);
    CHECK(reparsed.trajectories == 250);
}

TEST_CASE("pt writes the interference curve") {
    TempDir dir;
    RunConfig cfg;
    cfg.network.n_supplementary = 2;
    cfg.network.m_target = 2;
    cfg.window_lo = 0.0;
    cfg.window_hi = std::numbers::pi;
    cfg.grid_points = 768;  // rows land exactly on pi/6
    cfg.output = dir.file("pt.csv");
    cmd_pt(cfg);

    const auto rows = read_csv(cfg.output);
    REQUIRE(rows.size() == 770);
    CHECK(rows[0] == std::vector<std::string>{"t", "p"});
    CHECK(std::stod(rows[1][1]) == Catch::Approx(0.0).margin(1e-24));
    const double p_at_sixth = std::stod(rows[1 + 128][1]);
    CHECK(p_at_sixth == Catch::Approx(4.0 / 9.0).margin(1e-9));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double p = std::stod(rows[i][1]);
        REQUIRE(p >= -1e-15);
        REQUIRE(p <= 1.0 + 1e-12);
    }
}

TEST_CASE("pt validates its network") {
    RunConfig cfg;
    cfg.network.n_supplementary = 3;
    cfg.network.m_target = 3;
    CHECK_THROWS_AS(cmd_pt(cfg), ConfigError);
    cfg.network.n_supplementary = 2;
    CHECK_THROWS_AS(cmd_pt(cfg), ConfigError);
}

TEST_CASE("figure2 table") {
    TempDir dir;
    const std::string path = dir.file("figure2.csv");
    cmd_figure2(12, path);
    const auto rows = read_csv(path);
    REQUIRE(rows.size() == 2 + 5);
    CHECK(rows[0][0] == "N");
    CHECK(std::stoi(rows[1][0]) == 2);
    CHECK(std::stod(rows[1][1]) == Catch::Approx(std::numbers::pi / 6.0).margin(1e-8));
    CHECK(std::stod(rows[1][2]) == Catch::Approx(4.0 / 9.0).margin(1e-9));
    CHECK(std::stod(rows[2][2]) == Catch::Approx(16.0 / 49.0).margin(1e-9));
    double prev = 1.0;
    int expected_n = 2;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(std::stoi(rows[i][0]) == expected_n);
        expected_n += 2;
        const double p = std::stod(rows[i][2]);
        REQUIRE(p <= prev + 1e-12);
        prev = p;
        REQUIRE(std::stod(rows[i][5]) >= 0.0);
    }
    CHECK_THROWS_AS(cmd_figure2(3, path), ConfigError);
    CHECK_THROWS_AS(cmd_figure2(130, path), ConfigError);
}

TEST_CASE("rus writes trajectories and summary deterministically") {
    TempDir dir;
    RunConfig cfg;
    cfg.network.n_supplementary = 2;
    cfg.network.m_target = 2;
    cfg.target_k = 1;
    cfg.max_rounds = 3;
    cfg.trajectories = 200;
    cfg.master_seed = 31337;
    cfg.grid_points = 256;
    cfg.output_trajectories = dir.file("a.jsonl");
    cfg.output_summary = dir.file("a_summary.json");
    cmd_rus(cfg);

    RunConfig again = cfg;
    again.output_trajectories = dir.file("b.jsonl");
    again.output_summary = dir.file("b_summary.json");
    cmd_rus(again);

    CHECK(slurp(cfg.output_trajectories) == slurp(again.output_trajectories));
    CHECK(slurp(cfg.output_summary) == slurp(again.output_summary));

    const auto summary = nlohmann::json::parse(slurp(cfg.output_summary));
    CHECK(summary.at("master_seed").get<std::uint64_t>() == 31337);
    CHECK(summary.at("success_rate").get<double>() >= 0.0);
    CHECK(summary.at("per_round_first_success").size() == 3);

    // every line is a {trajectory, round, time, up_count, inferred_k, success} object
    std::ifstream in(cfg.output_trajectories);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        const auto rec = nlohmann::json::parse(line);
        REQUIRE(rec.contains("trajectory"));
        REQUIRE(rec.contains("round"));
        REQUIRE(rec.contains("time"));
        REQUIRE(rec.contains("up_count"));
        REQUIRE(rec.contains("inferred_k"));
        REQUIRE(rec.contains("success"));
        REQUIRE(rec.at("round").get<int>() >= 1);
        REQUIRE(rec.at("round").get<int>() <= 3);
    }
    CHECK(lines >= 200);

    SECTION("zero trajectories rejected") {
        cfg.trajectories = 0;
        CHECK_THROWS_AS(cmd_rus(cfg), ConfigError);
    }
}

TEST_CASE("wstate schedule reports") {
    TempDir dir;
    RunConfig cfg;
    cfg.output = dir.file("w.csv");
    cfg.output_report = dir.file("w.json");

    SECTION("xx_outer hits fidelity one at pi/4 for M=4") {
        cmd_wstate(4, WModel::xx_outer, cfg);
        const auto report = nlohmann::json::parse(slurp(cfg.output_report));
        CHECK(report.at("model") == "xx_outer");
        CHECK(report.at("scheduled_time").get<double>() ==
              Catch::Approx(std::numbers::pi / 4.0).epsilon(1e-11));
        CHECK(report.at("fidelity_at_schedule").get<double>() >= 1.0 - 1e-9);

        const auto rows = read_csv(cfg.output);
        REQUIRE(rows.size() == 258);
        // halfway to the schedule the transfer probability is 1/2
        CHECK(std::stod(rows[1 + 64][1]) == Catch::Approx(0.5).margin(1e-9));
        CHECK(std::stod(rows[1 + 128][1]) == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("xxz_tuned reports lambda = -1 for M=3") {
        cmd_wstate(3, WModel::xxz_tuned, cfg);
        const auto report = nlohmann::json::parse(slurp(cfg.output_report));
        CHECK(report.at("lambda").get<double>() == Catch::Approx(-1.0));
        CHECK(report.at("fidelity_at_schedule").get<double>() >= 1.0 - 1e-9);
    }
    SECTION("xx_center_field carries the center offset") {
        cmd_wstate(5, WModel::xx_center_field, cfg);
        const auto report = nlohmann::json::parse(slurp(cfg.output_report));
        CHECK(report.at("field_center_extra").get<double>() == Catch::Approx(-2.0));
        CHECK(report.at("fidelity_at_schedule").get<double>() >= 1.0 - 1e-9);
    }
    SECTION("local unitary model reports the raw overlap too") {
        cmd_wstate(4, WModel::xx_local_unitary, cfg);
        const auto report = nlohmann::json::parse(slurp(cfg.output_report));
        CHECK(report.at("fidelity_at_schedule").get<double>() >= 1.0 - 1e-9);
        CHECK(report.at("overlap_modulus_at_schedule").get<double>() ==
              Catch::Approx(std::sqrt(17.0) / 5.0).margin(1e-9));
    }
    SECTION("M out of range") {
        CHECK_THROWS_AS(cmd_wstate(1, WModel::xx_outer, cfg), ConfigError);
        CHECK_THROWS_AS(cmd_wstate(21, WModel::xx_outer, cfg), ConfigError);
    }
}

TEST_CASE("validate emits a report and passes on small instances") {
    TempDir dir;
    RunConfig cfg;
    cfg.output_report = dir.file("v.json");
    REQUIRE(cmd_validate(3, 3, cfg) == 0);
    const auto report = nlohmann::json::parse(slurp(cfg.output_report));
    CHECK(report.at("all_pass").get<bool>());
    for (const auto& [name, check] : report.at("checks").items()) {
        INFO(name);
        CHECK(check.at("pass").get<bool>());
    }
    // Heisenberg mirror Sz=0 spectrum for N=2 is listed in the report
    RunConfig cfg2;
    cfg2.output_report = dir.file("v2.json");
    REQUIRE(cmd_validate(2, 2, cfg2) == 0);
    const auto report2 = nlohmann::json::parse(slurp(cfg2.output_report));
    const auto spectrum = report2.at("collective_sz0_spectrum");
    REQUIRE(spectrum.size() == 3);
    CHECK(spectrum[0].get<double>() == Catch::Approx(-4.0).margin(1e-9));
    CHECK(spectrum[1].get<double>() == Catch::Approx(-2.0).margin(1e-9));
    CHECK(spectrum[2].get<double>() == Catch::Approx(2.0).margin(1e-9));

    SECTION("oversize request is a config error") {
        CHECK_THROWS_AS(cmd_validate(9, 8, cfg), ConfigError);
    }
}
