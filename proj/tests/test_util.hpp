#pragma once

#include "oracle.hpp"
#include "teleopt/optimizer.hpp"

namespace testutil {

inline teleopt::ProtocolParams random_feasible(teleopt::Rng& rng) {
    for (;;) {
        teleopt::ParamVector raw;
        for (double& v : raw) v = 4.0 * rng.uniform() - 2.0;
        try {
            return teleopt::project_feasible(raw);
        } catch (const teleopt::ProjectionError&) {
        }
    }
}

inline teleopt::NoiseConfig random_noise(teleopt::Rng& rng) {
    const teleopt::NoiseModel models[] = {
        teleopt::NoiseModel::BitFlip, teleopt::NoiseModel::PhaseFlip,
        teleopt::NoiseModel::Depolarizing, teleopt::NoiseModel::AmplitudeDamping};
    const teleopt::NoisePlacement places[] = {teleopt::NoisePlacement::InputQubit,
                                              teleopt::NoisePlacement::AliceChannelQubit,
                                              teleopt::NoisePlacement::BothChannelQubits};
    return {models[rng.bits() % 4], rng.uniform(), places[rng.bits() % 3]};
}

inline oracle::Input to_oracle(const teleopt::InputAngles& a,
                               const teleopt::ProtocolParams& p,
                               const teleopt::NoiseConfig& n) {
    oracle::Input in{};
    in.alpha = a.alpha;
    in.beta = a.beta;
    const teleopt::cplx cs[4] = {p.channel.a, p.channel.b, p.channel.c, p.channel.d};
    for (int i = 0; i < 4; ++i) {
        in.chan[2 * i] = cs[i].real();
        in.chan[2 * i + 1] = cs[i].imag();
    }
    in.phi = p.meas.phi;
    in.theta = p.meas.theta;
    in.lambda = p.meas.lambda;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            in.j0[4 * r + 2 * c] = p.post.j0(r, c).real();
            in.j0[4 * r + 2 * c + 1] = p.post.j0(r, c).imag();
            in.j1[4 * r + 2 * c] = p.post.j1(r, c).real();
            in.j1[4 * r + 2 * c + 1] = p.post.j1(r, c).imag();
        }
    in.model = static_cast<int>(n.model);
    in.p = n.p;
    in.placement = static_cast<int>(n.placement);
    return in;
}

}  // namespace testutil
