#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "teleopt/io.hpp"

using namespace teleopt;

namespace {

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.p_points = 5;
    cfg.iterations = 120;
    cfg.reward_alpha = cfg.reward_beta = 12;
    cfg.eval_alpha = cfg.eval_beta = 16;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("baseline curves") {
    const FidelityGrid grid = FidelityGrid::midpoint(64, 64);
    std::vector<double> ps;
    for (int i = 0; i <= 10; ++i) ps.push_back(i / 10.0);

    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::Depolarizing}) {
        const auto curve = baseline_curve(m, NoisePlacement::AliceChannelQubit, ps, grid);
        REQUIRE(curve.size() == ps.size());
        for (const auto& [p, f] : curve) CHECK(std::abs(f - (1.0 - 2.0 * p / 3.0)) <= 1e-3);
    }

    // p = 0 endpoint for every model
    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                               NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping}) {
        const auto curve = baseline_curve(m, NoisePlacement::BothChannelQubits, {0.0}, grid);
        CHECK(std::abs(curve[0].second - 1.0) <= 1e-9);
    }
}

TEST_CASE("amplitude damping endpoint agrees with the brute-force oracle") {
    const FidelityGrid grid = FidelityGrid::midpoint(32, 32);
    const auto curve =
        baseline_curve(NoiseModel::AmplitudeDamping, NoisePlacement::AliceChannelQubit, {1.0}, grid);

    // same quadrature, fully independent evolution
    double num = 0, den = 0;
    for (double alpha : grid.alphas) {
        const double w = std::sin(alpha);
        for (double beta : grid.betas) {
            oracle::Input in{};
            in.alpha = alpha / 2;
            in.beta = beta;
            const double s = 1.0 / std::sqrt(2.0);
            in.chan[0] = s;
            in.chan[6] = s;
            in.j0[0] = in.j0[6] = 1.0;
            in.model = 3;
            in.p = 1.0;
            in.placement = 1;
            num += w * oracle::teleport(in).total;
            den += w;
        }
    }
    CHECK(std::abs(curve[0].second - num / den) <= 1e-9);
    CHECK(curve[0].second == doctest::Approx(0.5).epsilon(1e-3));  // closed form at p=1
}

TEST_CASE("sweep structure and anchoring") {
    SweepConfig cfg = small_config();
    cfg.model = NoiseModel::BitFlip;
    const ScenarioResult result = run_sweep(cfg);

    REQUIRE(result.records.size() == 5);
    const auto ps = cfg.p_grid();
    for (size_t i = 0; i < result.records.size(); ++i) {
        const PointRecord& r = result.records[i];
        CHECK(r.p == ps[i]);
        CHECK(r.f_optimized >= r.f_baseline - 1e-9);
        CHECK(r.f_optimized <= 1.0 + 1e-9);
        CHECK(r.f_baseline >= -1e-9);
        CHECK_FALSE(r.failed);
        CHECK(r.iterations == cfg.iterations);
        // recorded parameters are feasible
        const ProtocolParams pp = project_feasible(r.params, cfg.variant);
        const ParamVector back = flatten(pp);
        for (int k = 0; k < 27; ++k) CHECK(std::abs(back[k] - r.params[k]) <= 1e-10);
    }
    // fitted table has residuals populated (possibly zero) and finite rows
    for (int row = 0; row < 27; ++row) {
        for (double c : result.fitted.rows[row]) CHECK(std::isfinite(c));
        CHECK(result.fitted.residuals[row] >= 0.0);
    }
}

TEST_CASE("rotated variant records keep baseline channel and post columns") {
    SweepConfig cfg = small_config();
    cfg.variant = Variant::RotatedBasis;
    cfg.model = NoiseModel::AmplitudeDamping;
    const ScenarioResult result = run_sweep(cfg);
    const ParamVector base = flatten(bell_baseline());
    for (const PointRecord& r : result.records)
        for (int k = 3; k < 27; ++k) CHECK(r.params[k] == base[k]);
}

TEST_CASE("rotated basis strictly beats the baseline at full bit-flip") {
    // the channel stays |Phi+>, yet measuring in the (iX)-rotated basis with
    // the derived corrections undoes a certain bit flip completely
    const FidelityGrid reward = FidelityGrid::midpoint(24, 24);
    const NoiseConfig noise{NoiseModel::BitFlip, 1.0, NoisePlacement::AliceChannelQubit};
    const Objective obj = [&](const ProtocolParams& p) {
        return average_fidelity(p, noise, reward);
    };
    const double pi = 3.14159265358979323846;
    CHECK(std::abs(obj(rotated_basis({pi, pi, 0.0})) - 1.0) <= 1e-9);

    ProtocolParams init = bell_baseline();
    init.variant = Variant::RotatedBasis;
    OptimizerConfig cfg;
    cfg.active_mask = variant_mask(Variant::RotatedBasis);
    const OptResult r = hill_climb(obj, init, cfg);
    CHECK(r.fidelity >= 0.9);  // strict improvement over the 1/3 baseline
}

TEST_CASE("bell variant sweep records the baseline itself") {
    SweepConfig cfg = small_config();
    cfg.variant = Variant::BellBaseline;
    const ScenarioResult result = run_sweep(cfg);
    for (const PointRecord& r : result.records) {
        CHECK(r.iterations == 0);
        CHECK(r.f_optimized == doctest::Approx(r.f_baseline));
    }
}

TEST_CASE("sweeps are deterministic byte for byte") {
    SweepConfig cfg = small_config();
    cfg.seed = 321;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "teleopt_det_a.csv").string();
    const std::string b = (dir / "teleopt_det_b.csv").string();
    write_csv(run_sweep(cfg), a);
    write_csv(run_sweep(cfg), b);
    const std::string sa = slurp(a), sb = slurp(b);
    CHECK(!sa.empty());
    CHECK(sa == sb);
    CHECK(sa.find('\r') == std::string::npos);  // LF only
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("reconstruct_params matches the published constants at p = 0") {
    const CoefficientTable bf = load_reference_table(NoiseModel::BitFlip);
    const ParamVector raw = table_at(bf, 0.0);
    CHECK(raw[0] == doctest::Approx(0.34890));  // phi before projection
    CHECK(raw[3] == doctest::Approx(0.67329));  // a_Re before projection

    const CoefficientTable dp = load_reference_table(NoiseModel::Depolarizing);
    CHECK(table_at(dp, 0.0)[1] == doctest::Approx(0.15462));  // theta

    for (double p : {0.0, 0.3, 0.6, 1.0}) {
        const ProtocolParams pp = reconstruct_params(bf, p);
        CHECK(std::abs(pp.channel.norm() - 1.0) <= 1e-10);
        CHECK(pp.post.defect() <= 1e-10);
    }
}

TEST_CASE("compare_curves reports all three columns per grid point") {
    SweepConfig cfg = small_config();
    cfg.model = NoiseModel::BitFlip;
    const ScenarioResult result = run_sweep(cfg);
    const CoefficientTable table = load_reference_table(NoiseModel::BitFlip);
    const FidelityGrid grid = FidelityGrid::midpoint(16, 16);
    const auto rows = compare_curves(result, table, grid);
    REQUIRE(rows.size() == result.records.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].p == result.records[i].p);
        CHECK(rows[i].f_baseline == result.records[i].f_baseline);
        CHECK(rows[i].f_optimized >= rows[i].f_baseline - 1e-9);
        CHECK(rows[i].f_reconstructed >= 0.0);
        CHECK(rows[i].f_reconstructed <= 1.0 + 1e-9);
    }
}

TEST_CASE("reconstruct_curve runs the table across a grid") {
    const CoefficientTable table = load_reference_table(NoiseModel::AmplitudeDamping);
    const FidelityGrid grid = FidelityGrid::midpoint(16, 16);
    std::vector<double> ps = {0.0, 0.5, 1.0};
    const auto rows = reconstruct_curve(table, NoiseModel::AmplitudeDamping,
                                        NoisePlacement::AliceChannelQubit, ps, grid);
    REQUIRE(rows.size() == 3);
    for (const ReconRow& r : rows) {
        CHECK(r.f_baseline >= 0.0);
        CHECK(r.f_reconstructed >= 0.0);
        CHECK(r.f_reconstructed <= 1.0 + 1e-9);
    }
}

TEST_CASE("scenario presets cover the studied grid") {
    const auto& presets = scenario_presets();
    CHECK(presets.size() == 6);
    int alice = 0, both = 0;
    for (const ScenarioPreset& s : presets) {
        CHECK(s.model != NoiseModel::PhaseFlip);
        if (s.placement == NoisePlacement::AliceChannelQubit) ++alice;
        if (s.placement == NoisePlacement::BothChannelQubits) ++both;
    }
    CHECK(alice == 3);
    CHECK(both == 3);
}

TEST_CASE("manifest records the run") {
    SweepConfig cfg = small_config();
    cfg.seed = 9;
    const ScenarioResult result = run_sweep(cfg);
    const std::string path =
        (std::filesystem::temp_directory_path() / "teleopt_manifest.txt").string();
    write_manifest(result, path);
    const std::string text = slurp(path);
    CHECK(text.find("seed=9") != std::string::npos);
    CHECK(text.find("reward_grid=12x12") != std::string::npos);
    CHECK(text.find("eval_grid=16x16") != std::string::npos);
    CHECK(text.find("duration_seconds=") != std::string::npos);
    CHECK(text.find("failed_points=0") != std::string::npos);
    std::remove(path.c_str());
}
