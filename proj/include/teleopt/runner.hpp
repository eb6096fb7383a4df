#pragma once

#include <string>
#include <utility>
#include <vector>

#include "teleopt/optimizer.hpp"
#include "teleopt/tables.hpp"

namespace teleopt {

struct SweepConfig {
    NoiseModel model = NoiseModel::BitFlip;
    NoisePlacement placement = NoisePlacement::AliceChannelQubit;
    Variant variant = Variant::FullyAdaptive;
    int p_points = 50;  // uniform grid over [0,1] including both endpoints
    int iterations = 3000;
    double sigma0 = 0.1;
    double decay = 0.999;
    double explore_prob = 0.01;
    uint64_t seed = 0;
    int reward_alpha = 24, reward_beta = 24;  // objective grid inside the optimizer
    int eval_alpha = 64, eval_beta = 64;      // reporting grid
    bool warm_start = true;                   // start each p from the previous optimum
    std::string out_dir = ".";

    std::vector<double> p_grid() const;
};

struct PointRecord {
    double p;
    double f_baseline;
    double f_optimized;
    ParamVector params;  // feasible optimized parameters, flattened
    uint64_t seed;       // per-point optimizer seed
    int iterations;
    bool failed;  // optimizer search error; baseline parameters recorded
};

struct ScenarioResult {
    SweepConfig config;
    std::vector<PointRecord> records;
    CoefficientTable fitted;  // cubic fit of each parameter across p
    double duration_seconds = 0;
};

/// Bell-baseline average fidelity at each p.
std::vector<std::pair<double, double>> baseline_curve(NoiseModel model,
                                                      NoisePlacement placement,
                                                      const std::vector<double>& p_grid,
                                                      const FidelityGrid& grid);

/// Optimize each p in ascending order (warm-started when configured), anchor
/// every record against the baseline on the evaluation grid, then fit cubics
/// per parameter. Optimizer failures mark the record and fall back to the
/// baseline parameters; they never abort the sweep.
ScenarioResult run_sweep(const SweepConfig& cfg);

/// Evaluate every table row at p and project back onto the feasible set.
ProtocolParams reconstruct_params(const CoefficientTable& table, double p);

struct CompareRow {
    double p;
    double f_baseline;
    double f_optimized;
    double f_reconstructed;
};

/// Per-p (baseline, freshly optimized, table-reconstructed) fidelities.
std::vector<CompareRow> compare_curves(const ScenarioResult& result,
                                       const CoefficientTable& table,
                                       const FidelityGrid& grid);

struct ReconRow {
    double p;
    double f_baseline;
    double f_reconstructed;
};

/// Baseline vs table-reconstructed curve, no optimization involved.
std::vector<ReconRow> reconstruct_curve(const CoefficientTable& table, NoiseModel model,
                                        NoisePlacement placement,
                                        const std::vector<double>& p_grid,
                                        const FidelityGrid& grid);

struct ScenarioPreset {
    const char* name;
    NoiseModel model;
    NoisePlacement placement;
};

/// The six studied scenarios: {bitflip, amplitude damping, depolarizing} x
/// {Alice's qubit, both pair qubits}.
const std::array<ScenarioPreset, 6>& scenario_presets();

}  // namespace teleopt
