#include "teleopt/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace teleopt {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kOutcomeEps = 1e-12;  // below this an outcome is treated as unfired

// Pauli order fixed as (I, Z, X, ZX) everywhere.
const std::array<Matrix, 4> kPauliSeq = {
    Matrix{2, 2, {1, 0, 0, 1}},
    Matrix{2, 2, {1, 0, 0, -1}},
    Matrix{2, 2, {0, 1, 1, 0}},
    Matrix{2, 2, {0, 1, -1, 0}},  // Z*X
};

}  // namespace

double ChannelCoeffs::norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

double PostKraus::defect() const {
    KrausSet k;
    k.ops = {j0, j1};
    return completeness_defect(k);
}

ProtocolParams bell_baseline() {
    ProtocolParams p;
    p.variant = Variant::BellBaseline;
    return p;
}

ProtocolParams rotated_basis(const MeasurementAngles& meas) {
    ProtocolParams p;
    p.meas = meas;
    p.variant = Variant::RotatedBasis;
    return p;
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::BellBaseline: return "bell";
        case Variant::RotatedBasis: return "rotated";
        case Variant::FullyAdaptive: return "adaptive";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    if (name == "bell") return Variant::BellBaseline;
    if (name == "rotated") return Variant::RotatedBasis;
    if (name == "adaptive") return Variant::FullyAdaptive;
    throw std::invalid_argument("unknown variant: " + name);
}

FidelityGrid FidelityGrid::midpoint(int n_alpha, int n_beta) {
    if (n_alpha < 1 || n_beta < 1) throw std::invalid_argument("FidelityGrid: empty grid");
    FidelityGrid g;
    g.alphas.resize(n_alpha);
    g.betas.resize(n_beta);
    g.weights.resize(n_alpha);
    for (int i = 0; i < n_alpha; ++i) {
        g.alphas[i] = (i + 0.5) * kPi / n_alpha;
        g.weights[i] = std::sin(g.alphas[i]);
    }
    for (int j = 0; j < n_beta; ++j) g.betas[j] = (j + 0.5) * 2.0 * kPi / n_beta;

    g.nx.resize(static_cast<size_t>(n_alpha) * n_beta);
    g.ny.resize(g.nx.size());
    g.nz.resize(g.nx.size());
    for (int i = 0; i < n_alpha; ++i) {
        const double st = std::sin(g.alphas[i]), ct = std::cos(g.alphas[i]);
        for (int j = 0; j < n_beta; ++j) {
            const size_t idx = static_cast<size_t>(i) * n_beta + j;
            g.nx[idx] = st * std::cos(g.betas[j]);
            g.ny[idx] = st * std::sin(g.betas[j]);
            g.nz[idx] = ct;
        }
    }
    return g;
}

PureState input_state(const InputAngles& angles) {
    return PureState{{std::cos(angles.alpha),
                      std::polar(1.0, angles.beta) * std::sin(angles.alpha)}};
}

PureState channel_state(const ChannelCoeffs& c) {
    if (std::abs(c.norm() - 1.0) > 1e-8)
        throw std::domain_error("channel_state: coefficients not normalized");
    return PureState{{c.a, c.b, c.c, c.d}};
}

Matrix su2(const MeasurementAngles& m) {
    const double ch = std::cos(m.theta / 2), sh = std::sin(m.theta / 2);
    const cplx ep = std::polar(1.0, -(m.phi + m.lambda) / 2);
    const cplx em = std::polar(1.0, -(m.phi - m.lambda) / 2);
    return Matrix{2, 2, {ep * ch, -em * sh, std::conj(em) * sh, std::conj(ep) * ch}};
}

std::array<PureState, 4> rotated_bell_basis(const Matrix& u) {
    if (u.rows() != 2 || u.cols() != 2) throw std::domain_error("rotated_bell_basis: u must be 2x2");
    if (max_abs(dagger(u) * u - Matrix::identity(2)) > 1e-9)
        throw std::domain_error("rotated_bell_basis: u is not unitary");
    // B_k = (U P_k (x) I)|Phi+>, whose coefficient matrix is U P_k / sqrt(2).
    // Rotating the Bell vectors this way (rather than U before P_k) is what
    // makes the derived corrections U P_k U^dag exact: the conditioned state
    // for outcome k through the matched channel is U P_k^dag U^dag |psi>.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::array<PureState, 4> basis;
    for (int k = 0; k < 4; ++k) {
        const Matrix a = u * kPauliSeq[k];
        basis[k] = PureState{{a(0, 0) * inv_sqrt2, a(0, 1) * inv_sqrt2,
                              a(1, 0) * inv_sqrt2, a(1, 1) * inv_sqrt2}};
    }
    return basis;
}

std::array<Matrix, 4> measurement_operators(const std::array<PureState, 4>& basis) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx ip = 0;
            for (int k = 0; k < 4; ++k) ip += std::conj(basis[i].amp[k]) * basis[j].amp[k];
            if (std::abs(ip - (i == j ? 1.0 : 0.0)) > 1e-9)
                throw std::domain_error("measurement_operators: basis not orthonormal");
        }
    std::array<Matrix, 4> ms;
    for (int i = 0; i < 4; ++i) {
        Matrix proj(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) proj(r, c) = basis[i].amp[r] * std::conj(basis[i].amp[c]);
        ms[i] = tensor_product(proj, Matrix::identity(2));
    }
    return ms;
}

std::array<Matrix, 4> correction_unitaries(const Matrix& u) {
    const Matrix ud = dagger(u);
    return {u * kPauliSeq[0] * ud, u * kPauliSeq[1] * ud, u * kPauliSeq[2] * ud,
            u * kPauliSeq[3] * ud};
}

DensityMatrix post_process(const DensityMatrix& rho, const PostKraus& post) {
    if (post.defect() > 1e-9) throw std::domain_error("post_process: Kraus pair not complete");
    KrausSet k;
    k.ops = {post.j0, post.j1};
    return apply_channel(rho, k);
}

TeleportOutcome teleport(const InputAngles& angles, const ProtocolParams& params,
                         const NoiseConfig& noise) {
    const PureState psi = input_state(angles);

    Matrix rho_in(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rho_in(i, j) = psi.amp[i] * std::conj(psi.amp[j]);
    DensityMatrix in_state(rho_in);
    if (noise.placement == NoisePlacement::InputQubit) in_state = apply_noise(in_state, noise);

    const PureState phi_c = channel_state(params.channel);
    Matrix rho_ent(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho_ent(i, j) = phi_c.amp[i] * std::conj(phi_c.amp[j]);
    DensityMatrix ent(rho_ent);
    if (noise.placement != NoisePlacement::InputQubit) ent = apply_noise(ent, noise);

    const DensityMatrix rho_total(tensor_product(in_state.m, ent.m));

    const Matrix u = su2(params.meas);
    const auto basis = rotated_bell_basis(u);
    const auto ms = measurement_operators(basis);
    std::array<Matrix, 4> corr;
    if (params.correction_override) {
        for (int i = 0; i < 4; ++i) corr[i] = su2((*params.correction_override)[i]);
    } else {
        corr = correction_unitaries(u);
    }

    TeleportOutcome out;
    for (int i = 0; i < 4; ++i) {
        const double p_i = trace(ms[i] * rho_total.m).real();
        out.probabilities[i] = p_i;

        DensityMatrix bob(Matrix(2, 2));
        if (p_i > kOutcomeEps) {
            const DensityMatrix sel(ms[i] * rho_total.m * ms[i]);
            bob = partial_trace(sel, 3, {2});
            bob.m = bob.m * cplx(1.0 / p_i, 0);
        } else {
            bob.m = Matrix::identity(2) * cplx(0.5, 0);
        }
        bob.m = corr[i] * bob.m * dagger(corr[i]);
        bob = post_process(bob, params.post);

        const double f_i = pure_fidelity(bob, psi);
        out.fidelities[i] = f_i;
        out.total += std::max(p_i, 0.0) * f_i;
    }
    return out;
}

double average_fidelity_reference(const ProtocolParams& params, const NoiseConfig& noise,
                                  const FidelityGrid& grid) {
    double num = 0, den = 0;
    for (size_t i = 0; i < grid.alphas.size(); ++i) {
        const double w = grid.weights[i];
        for (size_t j = 0; j < grid.betas.size(); ++j) {
            const InputAngles a{grid.alphas[i] / 2.0, grid.betas[j]};
            num += w * teleport(a, params, noise).total;
            den += w;
        }
    }
    if (den <= 0) throw std::domain_error("average_fidelity: empty grid");
    return num / den;
}

}  // namespace teleopt
