#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "teleopt/protocol.hpp"

// Fast path for average_fidelity.
//
// The per-input fidelity F(psi) = <psi| L(|psi><psi|) |psi> is bilinear in the
// input density matrix, where L is the composite map of the whole protocol
// (conditioning on each outcome, correction, post-processing, summed with its
// outcome weight absorbed — every stage is linear, and the p_i cancel between
// conditioning and the probability-weighted sum). Writing rho_psi in the Pauli
// basis turns F into a quadratic polynomial in the Bloch vector n, so one
// protocol "compilation" yields 10 real coefficients and each grid node costs
// a handful of multiplies. Grid rows are evaluated in parallel and reduced in
// fixed index order, so results are identical for any thread count.

namespace teleopt {

namespace {

using C = cplx;

struct M2 {
    C a[2][2];
};

M2 mul(const M2& x, const M2& y) {
    M2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.a[i][j] = x.a[i][0] * y.a[0][j] + x.a[i][1] * y.a[1][j];
    return r;
}

M2 conj_by(const M2& u, const M2& rho) {  // u rho u^dag
    M2 ud;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ud.a[i][j] = std::conj(u.a[j][i]);
    return mul(mul(u, rho), ud);
}

M2 from_matrix(const Matrix& m) {
    M2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.a[i][j] = m(i, j);
    return r;
}

// Bloch basis {I, X, Y, Z}; distinct from the measurement Pauli sequence.
const std::array<M2, 4> kBloch = {{{{{1, 0}, {0, 1}}},
                                   {{{0, 1}, {1, 0}}},
                                   {{{0, C(0, -1)}, {C(0, 1), 0}}},
                                   {{{1, 0}, {0, -1}}}}};

struct CompiledFidelity {
    // F(n) = q0 + qx nx + qy ny + qz nz
    //      + qxx nx^2 + qyy ny^2 + qzz nz^2 + qxy nx ny + qxz nx nz + qyz ny nz
    double q0, qx, qy, qz, qxx, qyy, qzz, qxy, qxz, qyz;

    double eval(double nx, double ny, double nz) const {
        return q0 + qx * nx + qy * ny + qz * nz + qxx * nx * nx + qyy * ny * ny +
               qzz * nz * nz + qxy * nx * ny + qxz * nx * nz + qyz * ny * nz;
    }
};

CompiledFidelity compile_fidelity(const ProtocolParams& params, const NoiseConfig& noise) {
    // noisy pair state
    const PureState phi_c = channel_state(params.channel);
    Matrix rho_ent(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho_ent(i, j) = phi_c.amp[i] * std::conj(phi_c.amp[j]);
    DensityMatrix ent(rho_ent);
    if (noise.placement != NoisePlacement::InputQubit) ent = apply_noise(ent, noise);
    C pair[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) pair[i][j] = ent.m(i, j);

    // measurement basis, corrections, post map
    const Matrix u = su2(params.meas);
    const auto basis = rotated_bell_basis(u);
    C B[4][4];
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i) B[k][i] = basis[k].amp[i];

    std::array<M2, 4> corr;
    if (params.correction_override) {
        for (int i = 0; i < 4; ++i) corr[i] = from_matrix(su2((*params.correction_override)[i]));
    } else {
        const auto cs = correction_unitaries(u);
        for (int i = 0; i < 4; ++i) corr[i] = from_matrix(cs[i]);
    }
    if (params.post.defect() > 1e-9)
        throw std::domain_error("average_fidelity: post-processing pair not complete");
    const M2 j0 = from_matrix(params.post.j0), j1 = from_matrix(params.post.j1);

    std::vector<M2> input_kraus;
    if (noise.placement == NoisePlacement::InputQubit)
        for (const Matrix& e : kraus_for(noise.model, noise.p).ops)
            input_kraus.push_back(from_matrix(e));

    // push each Bloch basis element through the composite map
    std::array<M2, 4> lam;
    for (int b = 0; b < 4; ++b) {
        M2 rho = kBloch[b];
        if (!input_kraus.empty()) {
            M2 s{};
            for (const M2& e : input_kraus) {
                const M2 t = conj_by(e, rho);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) s.a[i][j] += t.a[i][j];
            }
            rho = s;
        }
        M2 acc{};
        for (int k = 0; k < 4; ++k) {
            // G[n][n'] = sum_{m,m'} conj(B[2m+n]) rho[m][m'] B[2m'+n']
            C g[2][2];
            for (int n = 0; n < 2; ++n)
                for (int np = 0; np < 2; ++np) {
                    C s = 0;
                    for (int m = 0; m < 2; ++m)
                        for (int mp = 0; mp < 2; ++mp)
                            s += std::conj(B[k][2 * m + n]) * rho.a[m][mp] * B[k][2 * mp + np];
                    g[n][np] = s;
                }
            // unnormalized conditioned Bob state
            M2 sig{};
            for (int l = 0; l < 2; ++l)
                for (int lp = 0; lp < 2; ++lp) {
                    C s = 0;
                    for (int n = 0; n < 2; ++n)
                        for (int np = 0; np < 2; ++np) s += g[n][np] * pair[2 * n + l][2 * np + lp];
                    sig.a[l][lp] = s;
                }
            sig = conj_by(corr[k], sig);
            const M2 s0 = conj_by(j0, sig), s1 = conj_by(j1, sig);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) acc.a[i][j] += s0.a[i][j] + s1.a[i][j];
        }
        lam[b] = acc;
    }

    // T[a][b] = Re tr(sigma_a lam_b); imaginary part vanishes for a
    // Hermiticity-preserving map
    double T[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            C t = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) t += kBloch[a].a[i][j] * lam[b].a[j][i];
            T[a][b] = t.real();
        }

    CompiledFidelity c{};
    c.q0 = 0.25 * T[0][0];
    c.qx = 0.25 * (T[0][1] + T[1][0]);
    c.qy = 0.25 * (T[0][2] + T[2][0]);
    c.qz = 0.25 * (T[0][3] + T[3][0]);
    c.qxx = 0.25 * T[1][1];
    c.qyy = 0.25 * T[2][2];
    c.qzz = 0.25 * T[3][3];
    c.qxy = 0.25 * (T[1][2] + T[2][1]);
    c.qxz = 0.25 * (T[1][3] + T[3][1]);
    c.qyz = 0.25 * (T[2][3] + T[3][2]);
    return c;
}

}  // namespace

double average_fidelity(const ProtocolParams& params, const NoiseConfig& noise,
                        const FidelityGrid& grid) {
    const CompiledFidelity cf = compile_fidelity(params, noise);
    const int na = static_cast<int>(grid.alphas.size());
    const int nb = static_cast<int>(grid.betas.size());
    if (na == 0 || nb == 0) throw std::domain_error("average_fidelity: empty grid");

    std::vector<double> row_sum(na);
#pragma omp parallel for schedule(static) if (na * nb >= 4096)
    for (int i = 0; i < na; ++i) {
        const size_t base = static_cast<size_t>(i) * nb;
        double s = 0;
        for (int j = 0; j < nb; ++j)
            s += cf.eval(grid.nx[base + j], grid.ny[base + j], grid.nz[base + j]);
        row_sum[i] = s;
    }

    double num = 0, den = 0;
    for (int i = 0; i < na; ++i) {
        num += grid.weights[i] * row_sum[i];
        den += grid.weights[i] * nb;
    }
    return num / den;
}

}  // namespace teleopt
