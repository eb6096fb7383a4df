#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "teleopt/io.hpp"

using namespace teleopt;

namespace {

std::string data_path(const char* name) {
    return std::string(TELEOPT_DATA_DIR) + "/" + name;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("reference table spot values") {
    const CoefficientTable bf = load_reference_table(NoiseModel::BitFlip);
    CHECK(bf.rows[0] == std::array<double, 4>{-3.19566, 4.47589, -2.05096, 0.34890});  // phi
    CHECK(bf.rows[3][3] == 0.67329);   // a_Re constant
    CHECK(bf.rows[23][0] == 0.85304);  // J1_10_Re p^3

    const CoefficientTable ad = load_reference_table(NoiseModel::AmplitudeDamping);
    CHECK(ad.rows[4] == std::array<double, 4>{7.79834, -11.18077, 4.16295, -0.25890});  // a_Im
    CHECK(ad.rows[1][3] == -0.02840);  // theta constant

    const CoefficientTable dp = load_reference_table(NoiseModel::Depolarizing);
    CHECK(dp.rows[23] == std::array<double, 4>{-4.38474, 6.95693, -2.51534, 0.08025});  // J1_10_Re
    CHECK(dp.rows[1][3] == 0.15462);  // theta constant

    CHECK_THROWS_AS(load_reference_table(NoiseModel::PhaseFlip), std::invalid_argument);
}

TEST_CASE("shipped CSV assets match the embedded tables") {
    const struct {
        NoiseModel model;
        const char* file;
    } cases[] = {{NoiseModel::BitFlip, "bitflip.csv"},
                 {NoiseModel::AmplitudeDamping, "amplitude_damping.csv"},
                 {NoiseModel::Depolarizing, "depolarizing.csv"}};
    for (const auto& c : cases) {
        const CoefficientTable from_file = parse_table_csv(data_path(c.file));
        const CoefficientTable embedded = load_reference_table(c.model);
        for (int i = 0; i < 27; ++i)
            for (int j = 0; j < 4; ++j) CHECK(from_file.rows[i][j] == embedded.rows[i][j]);
    }
}

TEST_CASE("table CSV round trip") {
    CoefficientTable t = load_reference_table(NoiseModel::BitFlip);
    for (int i = 0; i < 27; ++i) t.residuals[i] = 0.001 * i;
    const std::string path = temp_path("teleopt_table_roundtrip.csv");
    write_table_csv(t, path, true);
    const CoefficientTable back = parse_table_csv(path);
    for (int i = 0; i < 27; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(std::abs(back.rows[i][j] - t.rows[i][j]) <= 1e-8);
        CHECK(std::abs(back.residuals[i] - t.residuals[i]) <= 1e-8);
    }
    std::remove(path.c_str());
}

TEST_CASE("table evaluation assembles the raw vector") {
    const CoefficientTable bf = load_reference_table(NoiseModel::BitFlip);
    const ParamVector at0 = table_at(bf, 0.0);
    CHECK(at0[0] == doctest::Approx(0.34890));  // phi
    CHECK(at0[3] == doctest::Approx(0.67329));  // a_Re
    const ParamVector at1 = table_at(bf, 1.0);
    CHECK(at1[0] == doctest::Approx(-0.42183));
}

TEST_CASE("config defaults") {
    const SweepConfig cfg;
    CHECK(cfg.model == NoiseModel::BitFlip);
    CHECK(cfg.placement == NoisePlacement::AliceChannelQubit);
    CHECK(cfg.variant == Variant::FullyAdaptive);
    CHECK(cfg.p_points == 50);
    CHECK(cfg.iterations == 3000);
    CHECK(cfg.sigma0 == 0.1);
    CHECK(cfg.decay == 0.999);
    CHECK(cfg.explore_prob == 0.01);
    CHECK(cfg.seed == 0);
    CHECK(cfg.warm_start);

    const auto ps = cfg.p_grid();
    CHECK(ps.size() == 50);
    CHECK(ps.front() == 0.0);
    CHECK(ps.back() == 1.0);
}

TEST_CASE("config file parsing") {
    const std::string path = temp_path("teleopt_test.cfg");
    {
        std::ofstream out(path);
        out << "# comment line\n"
               "noise = amplitude_damping\n"
               "placement=both\n"
               "variant = rotated\n"
               "p_points = 10\n"
               "iterations=120\n"
               "decay = 0.99   # trailing comment\n"
               "seed = 77\n";
    }
    const SweepConfig cfg = parse_config_file(path);
    CHECK(cfg.model == NoiseModel::AmplitudeDamping);
    CHECK(cfg.placement == NoisePlacement::BothChannelQubits);
    CHECK(cfg.variant == Variant::RotatedBasis);
    CHECK(cfg.p_points == 10);
    CHECK(cfg.iterations == 120);
    CHECK(cfg.decay == 0.99);
    CHECK(cfg.seed == 77);
    // untouched keys keep defaults
    CHECK(cfg.sigma0 == 0.1);

    const auto ps = cfg.p_grid();
    REQUIRE(ps.size() == 10);
    CHECK(ps.front() == 0.0);
    CHECK(ps.back() == 1.0);
    CHECK(ps[1] == doctest::Approx(1.0 / 9.0));
    std::remove(path.c_str());
}

TEST_CASE("config errors name the offending key") {
    SweepConfig cfg;
    CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "decay", "1.5"),
                         doctest::Contains("decay"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "temperature", "3"),
                         doctest::Contains("temperature"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "p_points", "1"),
                         doctest::Contains("p_points"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "noise", "thermal"),
                         doctest::Contains("thermal"), std::invalid_argument);
}

TEST_CASE("sweep CSV schema and round trip") {
    ScenarioResult result;
    result.config = SweepConfig{};
    result.config.p_points = 5;
    for (int i = 0; i < 5; ++i) {
        PointRecord r{};
        r.p = i / 4.0;
        r.f_baseline = 1.0 - 0.1 * i;
        r.f_optimized = 1.0 - 0.05 * i;
        r.params = flatten(bell_baseline());
        r.params[0] = 0.123456789123;
        r.seed = 42 + i;
        r.iterations = 100;
        result.records.push_back(r);
    }
    const std::string path = temp_path("teleopt_sweep_schema.csv");
    write_csv(result, path);

    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.rfind("noise,placement,variant,p,f_baseline,f_optimized,seed,iterations,phi,",
                       0) == 0);
    // 35 columns
    CHECK(std::count(header.begin(), header.end(), ',') == 34);

    int lines = 0;
    std::string line, first;
    while (std::getline(in, line)) {
        if (lines == 0) first = line;
        ++lines;
        CHECK(std::count(line.begin(), line.end(), ',') == 34);
    }
    CHECK(lines == 5);

    // 9 significant digits round trip within 1e-8
    std::stringstream ss(first);
    std::string field;
    for (int i = 0; i < 9; ++i) std::getline(ss, field, ',');
    CHECK(std::abs(std::stod(field) - 0.123456789123) <= 1e-8);
    std::remove(path.c_str());
}

TEST_CASE("format_real uses 9 significant digits") {
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(1.0 / 3.0) == "0.333333333");
    CHECK(format_real(-0.123456789123) == "-0.123456789");
}
