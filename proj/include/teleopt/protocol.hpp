#pragma once

#include <array>
#include <optional>

#include "teleopt/noise.hpp"
#include "teleopt/qcore.hpp"

// The teleportation circuit with adaptive knobs: a general entangled channel
// state, a rotated Bell measurement basis, corrections derived from the same
// rotation, and a learned post-processing channel on the receiver's qubit.
//
// Composite ordering is (input, Alice pair half, Bob pair half), so the joint
// measurement projector is |B_i><B_i| (x) I verbatim.

namespace teleopt {

/// State parametrization cos(alpha)|0> + e^{i beta} sin(alpha)|1>.
struct InputAngles {
    double alpha = 0.0;  // [0, pi]
    double beta = 0.0;   // [0, 2pi)
};

/// |Phi> = a|00> + b|01> + c|10> + d|11>, |a|^2+..+|d|^2 = 1.
struct ChannelCoeffs {
    cplx a{1.0 / 1.4142135623730951, 0}, b{0, 0}, c{0, 0}, d{1.0 / 1.4142135623730951, 0};

    double norm() const;
};

/// Euler angles of the measurement rotation U = Rz(phi) Ry(theta) Rz(lambda).
struct MeasurementAngles {
    double phi = 0.0, theta = 0.0, lambda = 0.0;
};

/// Learned two-operator CPTP map applied after correction.
struct PostKraus {
    Matrix j0 = Matrix::identity(2);
    Matrix j1 = Matrix::zero(2, 2);

    double defect() const;
};

enum class Variant { BellBaseline, RotatedBasis, FullyAdaptive };

struct ProtocolParams {
    ChannelCoeffs channel;
    MeasurementAngles meas;
    PostKraus post;
    Variant variant = Variant::BellBaseline;

    // Per-outcome correction angles overriding the derived U P_k U^dag
    // corrections. Not part of the 27-real search vector; off by default.
    std::optional<std::array<MeasurementAngles, 4>> correction_override;
};

ProtocolParams bell_baseline();
ProtocolParams rotated_basis(const MeasurementAngles& meas);

std::string to_string(Variant v);

/// Accepts bell, rotated, adaptive.
Variant parse_variant(const std::string& name);

struct TeleportOutcome {
    std::array<double, 4> probabilities{};
    std::array<double, 4> fidelities{};
    double total = 0.0;
};

/// Bloch-sphere quadrature nodes. `alphas` are polar angles in [0, pi] with
/// weight sin(alpha); the input state at a node is the one whose Bloch vector
/// points along (alpha, beta), i.e. InputAngles{alpha/2, beta}. With that
/// pairing the weighted mean is the uniform sphere average.
struct FidelityGrid {
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<double> weights;  // sin(alpha), one per alpha row

    /// Midpoint-uniform grid, n_alpha x n_beta nodes.
    static FidelityGrid midpoint(int n_alpha, int n_beta);

    int nodes() const { return static_cast<int>(alphas.size() * betas.size()); }

    // unit Bloch vectors per node, cached at construction for the hot loop
    std::vector<double> nx, ny, nz;
};

// -- circuit pieces ----------------------------------------------------------

PureState input_state(const InputAngles& angles);

/// The 4-vector (a, b, c, d); rejects non-normalized coefficients.
PureState channel_state(const ChannelCoeffs& c);

/// U(phi, theta, lambda) = Rz(phi) Ry(theta) Rz(lambda).
Matrix su2(const MeasurementAngles& m);

/// The four standard Bell vectors (P_k (x) I)|Phi+>, k over {I, Z, X, ZX},
/// each rotated by u on the first qubit. Orthonormal for unitary u.
std::array<PureState, 4> rotated_bell_basis(const Matrix& u);

/// M_i = |B_i><B_i| (x) I on the 3-qubit space; sum_i M_i = I_8.
std::array<Matrix, 4> measurement_operators(const std::array<PureState, 4>& basis);

/// U_k = U P_k U^dag in the same Pauli order as the basis.
std::array<Matrix, 4> correction_unitaries(const Matrix& u);

/// rho -> J0 rho J0^dag + J1 rho J1^dag; requires a complete pair.
DensityMatrix post_process(const DensityMatrix& rho, const PostKraus& post);

// -- evaluation ---------------------------------------------------------------

/// One full protocol run: noisy channel, joint measurement, conditioned Bob
/// states, correction, post-processing, fidelity against the noiseless input.
TeleportOutcome teleport(const InputAngles& angles, const ProtocolParams& params,
                         const NoiseConfig& noise);

/// sin(alpha)-weighted mean of teleport(..).total over the grid. Grid nodes
/// are evaluated in parallel; the reduction order is fixed by node index, so
/// the result is identical for any thread count.
double average_fidelity(const ProtocolParams& params, const NoiseConfig& noise,
                        const FidelityGrid& grid);

/// Serial reference implementation (per-node generic teleport); kept for
/// testing and benchmarking the kernel against.
double average_fidelity_reference(const ProtocolParams& params, const NoiseConfig& noise,
                                  const FidelityGrid& grid);

}  // namespace teleopt
