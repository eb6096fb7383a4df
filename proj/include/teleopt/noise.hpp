#pragma once

#include <string>

#include "teleopt/qcore.hpp"

namespace teleopt {

enum class NoiseModel { BitFlip, PhaseFlip, Depolarizing, AmplitudeDamping };

/// Which subsystem the noise hits. "Alice" is the first tensor factor of the
/// entangled pair throughout.
enum class NoisePlacement { InputQubit, AliceChannelQubit, BothChannelQubits };

struct NoiseConfig {
    NoiseModel model = NoiseModel::BitFlip;
    double p = 0.0;  // strength in [0, 1]
    NoisePlacement placement = NoisePlacement::AliceChannelQubit;
};

/// Single-qubit Kraus set for the given model at strength p.
/// Bit/phase flip: {sqrt(1-p) I, sqrt(p) X|Z}. Depolarizing: the 4-operator
/// Pauli form {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}.
/// Amplitude damping: {[[1,0],[0,sqrt(1-p)]], [[0,sqrt(p)],[0,0]]}.
KrausSet kraus_for(NoiseModel model, double p);

/// Tensor each operator with identities so it acts on `target` of
/// `qubit_count` qubits.
KrausSet lift_single(const KrausSet& k, int target, int qubit_count);

/// All pairwise products E_k (x) E_l of two single-qubit sets.
KrausSet product_kraus(const KrausSet& ka, const KrausSet& kb);

/// Apply the configured noise. Expects the 2-qubit pair state for channel
/// placements and the 1-qubit input state for InputQubit.
DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseConfig& config);

std::string to_string(NoiseModel m);
std::string to_string(NoisePlacement p);

/// Accepts bitflip, phaseflip, depolarizing, amplitude_damping (alias "ad").
NoiseModel parse_noise_model(const std::string& name);

/// Accepts input, alice, both.
NoisePlacement parse_placement(const std::string& name);

}  // namespace teleopt
