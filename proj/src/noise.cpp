#include "teleopt/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace teleopt {

namespace {
const Matrix kI{2, 2, {1, 0, 0, 1}};
const Matrix kX{2, 2, {0, 1, 1, 0}};
const Matrix kY{2, 2, {0, cplx(0, -1), cplx(0, 1), 0}};
const Matrix kZ{2, 2, {1, 0, 0, -1}};
}  // namespace

KrausSet kraus_for(NoiseModel model, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("kraus_for: p outside [0,1]");
    KrausSet k;
    switch (model) {
        case NoiseModel::BitFlip:
            k.ops = {std::sqrt(1 - p) * kI, std::sqrt(p) * kX};
            break;
        case NoiseModel::PhaseFlip:
            k.ops = {std::sqrt(1 - p) * kI, std::sqrt(p) * kZ};
            break;
        case NoiseModel::Depolarizing:
            k.ops = {std::sqrt(1 - p) * kI, std::sqrt(p / 3) * kX, std::sqrt(p / 3) * kY,
                     std::sqrt(p / 3) * kZ};
            break;
        case NoiseModel::AmplitudeDamping:
            k.ops = {Matrix{2, 2, {1, 0, 0, std::sqrt(1 - p)}},
                     Matrix{2, 2, {0, std::sqrt(p), 0, 0}}};
            break;
    }
    return k;
}

KrausSet lift_single(const KrausSet& k, int target, int qubit_count) {
    if (k.dim() != 2) throw std::invalid_argument("lift_single: expects single-qubit operators");
    if (target < 0 || target >= qubit_count)
        throw std::invalid_argument("lift_single: target index out of range");
    KrausSet out;
    out.ops.reserve(k.ops.size());
    for (const Matrix& e : k.ops) {
        Matrix m = Matrix::identity(1);
        for (int q = 0; q < qubit_count; ++q)
            m = tensor_product(m, q == target ? e : Matrix::identity(2));
        out.ops.push_back(std::move(m));
    }
    return out;
}

KrausSet product_kraus(const KrausSet& ka, const KrausSet& kb) {
    if (ka.dim() != 2 || kb.dim() != 2)
        throw std::invalid_argument("product_kraus: expects single-qubit sets");
    KrausSet out;
    out.ops.reserve(ka.ops.size() * kb.ops.size());
    for (const Matrix& a : ka.ops)
        for (const Matrix& b : kb.ops) out.ops.push_back(tensor_product(a, b));
    return out;
}

DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseConfig& config) {
    const KrausSet k = kraus_for(config.model, config.p);
    switch (config.placement) {
        case NoisePlacement::InputQubit:
            if (rho.dim() != 2) throw std::invalid_argument("apply_noise: InputQubit expects dim 2");
            return apply_channel(rho, k);
        case NoisePlacement::AliceChannelQubit:
            if (rho.dim() != 4)
                throw std::invalid_argument("apply_noise: AliceChannelQubit expects dim 4");
            return apply_channel(rho, lift_single(k, 0, 2));
        case NoisePlacement::BothChannelQubits:
            if (rho.dim() != 4)
                throw std::invalid_argument("apply_noise: BothChannelQubits expects dim 4");
            return apply_channel(rho, product_kraus(k, k));
    }
    throw std::logic_error("apply_noise: unreachable");
}

std::string to_string(NoiseModel m) {
    switch (m) {
        case NoiseModel::BitFlip: return "bitflip";
        case NoiseModel::PhaseFlip: return "phaseflip";
        case NoiseModel::Depolarizing: return "depolarizing";
        case NoiseModel::AmplitudeDamping: return "amplitude_damping";
    }
    return "?";
}

std::string to_string(NoisePlacement p) {
    switch (p) {
        case NoisePlacement::InputQubit: return "input";
        case NoisePlacement::AliceChannelQubit: return "alice";
        case NoisePlacement::BothChannelQubits: return "both";
    }
    return "?";
}

NoiseModel parse_noise_model(const std::string& name) {
    if (name == "bitflip") return NoiseModel::BitFlip;
    if (name == "phaseflip") return NoiseModel::PhaseFlip;
    if (name == "depolarizing" || name == "depol") return NoiseModel::Depolarizing;
    if (name == "amplitude_damping" || name == "amplitudedamping" || name == "ad")
        return NoiseModel::AmplitudeDamping;
    throw std::invalid_argument("unknown noise model: " + name);
}

NoisePlacement parse_placement(const std::string& name) {
    if (name == "input") return NoisePlacement::InputQubit;
    if (name == "alice") return NoisePlacement::AliceChannelQubit;
    if (name == "both") return NoisePlacement::BothChannelQubits;
    throw std::invalid_argument("unknown noise placement: " + name);
}

}  // namespace teleopt
