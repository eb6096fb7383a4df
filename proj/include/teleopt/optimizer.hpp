#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teleopt/protocol.hpp"
#include "teleopt/rng.hpp"

// Search over the raw 27-real parameter vector
//   (phi, theta, lambda,
//    Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d,
//    J0 entries Re/Im row-major, J1 likewise)
// with feasibility restored after every perturbation: the channel vector is
// renormalized and the Kraus pair is right-multiplied by S^{-1/2},
// S = J0^dag J0 + J1^dag J1.

namespace teleopt {

using ParamVector = std::array<double, 27>;

/// Row names in vector order, matching the published coefficient tables.
const std::array<const char*, 27>& param_names();

struct ProjectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ParamVector flatten(const ProtocolParams& params);

/// Restore feasibility: channel normalized, Kraus pair made exactly complete,
/// angles passed through. Blocks a variant pins (channel/post for
/// RotatedBasis, everything for BellBaseline) are set to their baseline
/// values outright. Throws ProjectionError on a degenerate channel norm or a
/// near-singular Kraus pair.
ProtocolParams project_feasible(const ParamVector& raw,
                                Variant variant = Variant::FullyAdaptive);

/// Which coordinates a variant's search may move.
std::array<bool, 27> variant_mask(Variant variant);

/// x + Gaussian(0, sigma^2) on active coordinates.
ParamVector perturb(const ParamVector& x, double sigma, Rng& rng,
                    const std::array<bool, 27>& active_mask);

struct OptimizerConfig {
    int iterations = 3000;
    double sigma0 = 0.1;        // initial perturbation scale
    double decay = 0.999;       // multiplicative, applied every iteration
    double explore_prob = 0.01; // chance of accepting a non-improving move
    uint64_t seed = 0;
    std::array<bool, 27> active_mask = variant_mask(Variant::FullyAdaptive);
};

struct OptStep {
    int iteration;
    double proposal_fidelity;
    bool accepted;
    double best_fidelity;
    double sigma;
};

using OptTrace = std::vector<OptStep>;
using Objective = std::function<double(const ProtocolParams&)>;

struct OptResult {
    ProtocolParams params;
    double fidelity;
    OptTrace trace;
};

/// Perturb-and-accept search: keep improvements, accept regressions with
/// probability explore_prob, decay sigma each step. Returns the best feasible
/// point seen (the current point may end on an exploratory downgrade).
/// Deterministic for a fixed config.
OptResult hill_climb(const Objective& objective, const ProtocolParams& init,
                     const OptimizerConfig& cfg);

/// Central-difference gradient ascent baseline (h = 1e-5, learning rate
/// cfg.sigma0), projected after every step.
OptResult finite_diff_gradient_ascent(const Objective& objective, const ProtocolParams& init,
                                      const OptimizerConfig& cfg);

struct CubicFit {
    std::array<double, 4> coeffs;  // p^3, p^2, p, constant
    double residual;               // ||y - V c||_2
};

/// Least-squares cubic via Householder QR; needs >= 4 distinct abscissae.
CubicFit fit_cubic(const std::vector<double>& ps, const std::vector<double>& ys);

double eval_cubic(const std::array<double, 4>& coeffs, double p);

}  // namespace teleopt
