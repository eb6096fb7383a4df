#include "teleopt/selftest.hpp"

#include <cmath>
#include <iomanip>

#include "teleopt/runner.hpp"

namespace teleopt {

namespace {

struct Reporter {
    std::ostream& out;
    bool all_ok = true;

    void check(const char* name, bool ok, double worst = 0) {
        out << (ok ? "[pass] " : "[FAIL] ") << name;
        if (worst != 0) out << "  (worst " << std::scientific << std::setprecision(2) << worst << ")";
        out << '\n' << std::defaultfloat;
        all_ok = all_ok && ok;
    }
};

ProtocolParams random_feasible(Rng& rng, Variant variant) {
    ParamVector raw;
    for (double& v : raw) v = 2.0 * rng.uniform() - 1.0;
    return project_feasible(raw, variant);
}

NoiseConfig random_noise(Rng& rng) {
    const NoiseModel models[] = {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                                 NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping};
    const NoisePlacement places[] = {NoisePlacement::InputQubit,
                                     NoisePlacement::AliceChannelQubit,
                                     NoisePlacement::BothChannelQubits};
    return {models[rng.bits() % 4], rng.uniform(), places[rng.bits() % 3]};
}

}  // namespace

bool run_selftest(std::ostream& out) {
    Reporter rep{out};
    Rng rng(20240);

    {  // Kraus completeness over a strength grid, all models
        double worst = 0;
        for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                                   NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping})
            for (int i = 0; i <= 100; ++i)
                worst = std::max(worst, completeness_defect(kraus_for(m, i / 100.0)));
        rep.check("noise: Kraus completeness <= 1e-12 on 101-point grid", worst <= 1e-12, worst);
    }

    {  // channel application keeps density matrices valid
        bool ok = true;
        for (int t = 0; t < 40 && ok; ++t) {
            const ProtocolParams p = random_feasible(rng, Variant::FullyAdaptive);
            const PureState phi = channel_state(p.channel);
            Matrix rho(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) rho(i, j) = phi.amp[i] * std::conj(phi.amp[j]);
            NoiseConfig nc = random_noise(rng);
            if (nc.placement == NoisePlacement::InputQubit)
                nc.placement = NoisePlacement::AliceChannelQubit;
            ok = is_density_matrix(apply_noise(DensityMatrix(rho), nc), 1e-9, 1e-8);
        }
        rep.check("noise: apply_noise output is a density matrix", ok);
    }

    {  // noiseless teleportation is exact; probabilities normalized
        double worst_f = 0, worst_p = 0;
        const NoiseConfig off{NoiseModel::BitFlip, 0.0, NoisePlacement::AliceChannelQubit};
        for (int t = 0; t < 50; ++t) {
            const InputAngles a{rng.uniform() * 1.5707963267948966, rng.uniform() * 6.283185307179586};
            const TeleportOutcome o = teleport(a, bell_baseline(), off);
            worst_f = std::max(worst_f, std::abs(1.0 - o.total));
            double ps = 0;
            for (double p : o.probabilities) ps += p;
            worst_p = std::max(worst_p, std::abs(1.0 - ps));
        }
        rep.check("protocol: noiseless baseline F = 1 within 1e-9", worst_f <= 1e-9, worst_f);
        rep.check("protocol: outcome probabilities sum to 1 within 1e-9", worst_p <= 1e-9, worst_p);
    }

    {  // rotated basis + derived corrections + matched channel stay exact
        double worst = 0;
        const NoiseConfig off{NoiseModel::BitFlip, 0.0, NoisePlacement::AliceChannelQubit};
        for (int t = 0; t < 25; ++t) {
            const MeasurementAngles m{rng.uniform() * 6.28, rng.uniform() * 6.28,
                                      rng.uniform() * 6.28};
            const Matrix u = su2(m);
            ProtocolParams p;
            p.variant = Variant::FullyAdaptive;
            p.meas = m;
            // channel with coefficient matrix U^T/sqrt(2), i.e. (I (x) U)|Phi+>
            const double s = 1.0 / std::sqrt(2.0);
            p.channel = {u(0, 0) * s, u(1, 0) * s, u(0, 1) * s, u(1, 1) * s};
            const InputAngles a{rng.uniform() * 1.5707963267948966,
                                rng.uniform() * 6.283185307179586};
            worst = std::max(worst, std::abs(1.0 - teleport(a, p, off).total));
        }
        rep.check("protocol: rotated basis self-consistency (F = 1 for any u)", worst <= 1e-9,
                  worst);
    }

    {  // measurement completeness
        double worst = 0;
        for (int t = 0; t < 25; ++t) {
            const auto ms = measurement_operators(rotated_bell_basis(
                su2({rng.uniform() * 6.28, rng.uniform() * 6.28, rng.uniform() * 6.28})));
            Matrix sum(8, 8);
            for (const Matrix& m : ms) sum = sum + m;
            worst = std::max(worst, max_abs(sum - Matrix::identity(8)));
        }
        rep.check("protocol: sum of measurement operators = I within 1e-12", worst <= 1e-12,
                  worst);
    }

    {  // kernel agrees with the serial reference
        const FidelityGrid grid = FidelityGrid::midpoint(12, 12);
        double worst = 0;
        for (int t = 0; t < 12; ++t) {
            const ProtocolParams p = random_feasible(rng, Variant::FullyAdaptive);
            const NoiseConfig nc = random_noise(rng);
            worst = std::max(worst, std::abs(average_fidelity(p, nc, grid) -
                                             average_fidelity_reference(p, nc, grid)));
        }
        rep.check("protocol: fast kernel matches serial reference within 1e-12", worst <= 1e-12,
                  worst);
    }

    {  // projection invariants
        double worst_norm = 0, worst_defect = 0, worst_idem = 0;
        for (int t = 0; t < 1000; ++t) {
            ParamVector raw;
            for (double& v : raw) v = 4.0 * rng.uniform() - 2.0;
            ProtocolParams p;
            try {
                p = project_feasible(raw);
            } catch (const ProjectionError&) {
                continue;
            }
            worst_norm = std::max(worst_norm, std::abs(p.channel.norm() - 1.0));
            worst_defect = std::max(worst_defect, p.post.defect());
            const ParamVector once = flatten(p);
            const ParamVector twice = flatten(project_feasible(once));
            for (int i = 0; i < 27; ++i)
                worst_idem = std::max(worst_idem, std::abs(once[i] - twice[i]));
        }
        rep.check("optimizer: projected channel norm = 1 within 1e-12", worst_norm <= 1e-12,
                  worst_norm);
        rep.check("optimizer: projected Kraus defect <= 1e-10", worst_defect <= 1e-10,
                  worst_defect);
        rep.check("optimizer: projection idempotent within 1e-10", worst_idem <= 1e-10,
                  worst_idem);
    }

    {  // determinism of a small optimization
        const FidelityGrid grid = FidelityGrid::midpoint(8, 8);
        const NoiseConfig nc{NoiseModel::BitFlip, 0.6, NoisePlacement::AliceChannelQubit};
        const Objective obj = [&](const ProtocolParams& p) {
            return average_fidelity(p, nc, grid);
        };
        ProtocolParams init = bell_baseline();
        init.variant = Variant::FullyAdaptive;
        OptimizerConfig cfg;
        cfg.iterations = 60;
        cfg.seed = 99;
        const OptResult a = hill_climb(obj, init, cfg);
        const OptResult b = hill_climb(obj, init, cfg);
        bool same = a.fidelity == b.fidelity && a.trace.size() == b.trace.size();
        for (size_t i = 0; same && i < a.trace.size(); ++i)
            same = a.trace[i].proposal_fidelity == b.trace[i].proposal_fidelity &&
                   a.trace[i].accepted == b.trace[i].accepted;
        rep.check("optimizer: identical seeds give identical traces", same);
    }

    {  // reference tables load and project
        bool ok = true;
        for (const NoiseModel m :
             {NoiseModel::BitFlip, NoiseModel::AmplitudeDamping, NoiseModel::Depolarizing}) {
            const CoefficientTable t = load_reference_table(m);
            for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const ProtocolParams rp = reconstruct_params(t, p);
                ok = ok && std::abs(rp.channel.norm() - 1.0) <= 1e-10 &&
                     rp.post.defect() <= 1e-10;
            }
        }
        rep.check("tables: reconstructed parameters are feasible", ok);
    }

    out << (rep.all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES above\n");
    return rep.all_ok;
}

}  // namespace teleopt
