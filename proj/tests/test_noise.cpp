#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "teleopt/noise.hpp"
#include "teleopt/protocol.hpp"
#include "teleopt/rng.hpp"

using namespace teleopt;

namespace {

DensityMatrix bell_pair() {
    const double h = 0.5;
    Matrix m(4, 4);
    for (int i : {0, 3})
        for (int j : {0, 3}) m(i, j) = h;
    return DensityMatrix(m);
}

DensityMatrix psi_plus_pair() {
    const double h = 0.5;
    Matrix m(4, 4);
    for (int i : {1, 2})
        for (int j : {1, 2}) m(i, j) = h;
    return DensityMatrix(m);
}

double frobenius(const Matrix& m) {
    double s = 0;
    for (const cplx& v : m.data()) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("kraus_for matches the closed forms") {
    const KrausSet bf = kraus_for(NoiseModel::BitFlip, 0.5);
    REQUIRE(bf.ops.size() == 2);
    CHECK(bf.ops[0](0, 0).real() == doctest::Approx(0.70711).epsilon(1e-4));
    CHECK(bf.ops[1](0, 1).real() == doctest::Approx(0.70711).epsilon(1e-4));
    CHECK(std::abs(bf.ops[1](0, 0)) == 0.0);

    const KrausSet ad = kraus_for(NoiseModel::AmplitudeDamping, 1.0);
    CHECK(ad.ops[0](0, 0) == cplx(1));
    CHECK(ad.ops[0](1, 1) == cplx(0));
    CHECK(ad.ops[1](0, 1) == cplx(1));
    CHECK(ad.ops[1](1, 0) == cplx(0));

    // noiseless limit: identity plus zero operators
    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                               NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping}) {
        const KrausSet k = kraus_for(m, 0.0);
        CHECK(max_abs(k.ops[0] - Matrix::identity(2)) == 0.0);
        for (size_t i = 1; i < k.ops.size(); ++i) CHECK(max_abs(k.ops[i]) == 0.0);
    }

    CHECK_THROWS_AS(kraus_for(NoiseModel::BitFlip, -0.1), std::domain_error);
    CHECK_THROWS_AS(kraus_for(NoiseModel::BitFlip, 1.1), std::domain_error);
}

TEST_CASE("completeness defect stays at zero across the strength grid") {
    double worst = 0;
    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                               NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping})
        for (int i = 0; i <= 100; ++i) {
            const double p = i / 100.0;
            worst = std::max(worst, completeness_defect(kraus_for(m, p)));
            worst = std::max(worst, completeness_defect(lift_single(kraus_for(m, p), 1, 2)));
        }
    CHECK(worst <= 1e-12);
}

TEST_CASE("lift_single") {
    KrausSet x;
    x.ops = {Matrix{2, 2, {0, 1, 1, 0}}};
    const KrausSet lifted = lift_single(x, 0, 2);
    CHECK(max_abs(lifted.ops[0] - tensor_product(x.ops[0], Matrix::identity(2))) == 0.0);

    const double p = 0.37;
    const KrausSet second = lift_single(kraus_for(NoiseModel::BitFlip, p), 1, 2);
    CHECK(max_abs(second.ops[0] - Matrix::identity(4) * cplx(std::sqrt(1 - p), 0)) <= 1e-15);
    CHECK(max_abs(second.ops[1] -
                  tensor_product(Matrix::identity(2), Matrix{2, 2, {0, 1, 1, 0}}) *
                      cplx(std::sqrt(p), 0)) <= 1e-15);

    CHECK_THROWS_AS(lift_single(x, 2, 2), std::invalid_argument);
}

TEST_CASE("lifting then applying equals the reduced single-qubit channel on products") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        // random product state rho_a (x) rho_b
        auto rand_rho = [&rng]() {
            Matrix g(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) g(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
            Matrix h = g * dagger(g);
            return DensityMatrix(h * cplx(1.0 / trace(h).real(), 0));
        };
        const DensityMatrix ra = rand_rho(), rb = rand_rho();
        const KrausSet k = kraus_for(static_cast<NoiseModel>(rng.bits() % 4), rng.uniform());

        const DensityMatrix joint(tensor_product(ra.m, rb.m));
        const DensityMatrix lifted_out = apply_channel(joint, lift_single(k, 0, 2));
        const DensityMatrix reduced = partial_trace(lifted_out, 2, {0});
        const DensityMatrix direct = apply_channel(ra, k);
        CHECK(max_abs(reduced.m - direct.m) <= 1e-12);
        // untouched factor is untouched
        CHECK(max_abs(partial_trace(lifted_out, 2, {1}).m - rb.m) <= 1e-12);
    }
}

TEST_CASE("product_kraus") {
    KrausSet ident;
    ident.ops = {Matrix::identity(2)};
    const KrausSet i4 = product_kraus(ident, ident);
    REQUIRE(i4.ops.size() == 1);
    CHECK(max_abs(i4.ops[0] - Matrix::identity(4)) == 0.0);

    const KrausSet bb = product_kraus(kraus_for(NoiseModel::BitFlip, 0.5),
                                      kraus_for(NoiseModel::BitFlip, 0.5));
    REQUIRE(bb.ops.size() == 4);
    for (const Matrix& op : bb.ops) CHECK(frobenius(op) == doctest::Approx(1.0));
    CHECK(completeness_defect(bb) <= 1e-10);

    // (X (x) X) fixes |Phi+>
    NoiseConfig both{NoiseModel::BitFlip, 1.0, NoisePlacement::BothChannelQubits};
    const DensityMatrix out = apply_noise(bell_pair(), both);
    CHECK(max_abs(out.m - bell_pair().m) <= 1e-15);
}

TEST_CASE("apply_noise placements") {
    NoiseConfig alice{NoiseModel::BitFlip, 1.0, NoisePlacement::AliceChannelQubit};
    CHECK(max_abs(apply_noise(bell_pair(), alice).m - psi_plus_pair().m) <= 1e-15);

    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                               NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping}) {
        NoiseConfig off{m, 0.0, NoisePlacement::AliceChannelQubit};
        CHECK(max_abs(apply_noise(bell_pair(), off).m - bell_pair().m) == 0.0);
    }

    // depolarizing on Alice's half: (1-p)|Phi+><Phi+| + p/3 (other Bell projectors)
    const double p = 0.42;
    NoiseConfig dep{NoiseModel::Depolarizing, p, NoisePlacement::AliceChannelQubit};
    const DensityMatrix got = apply_noise(bell_pair(), dep);
    const double h = 0.5;
    Matrix want(4, 4);
    // |Phi+-> projectors on (0,3), |Psi+-> on (1,2); the +/- cross terms cancel
    want(0, 0) = want(3, 3) = (1 - p) * h + (p / 3) * h;
    want(0, 3) = want(3, 0) = (1 - p) * h - (p / 3) * h;
    want(1, 1) = want(2, 2) = (2 * p / 3) * h;
    want(1, 2) = want(2, 1) = 0;
    CHECK(max_abs(got.m - want) <= 1e-12);

    CHECK_THROWS_AS(apply_noise(bell_pair(),
                                NoiseConfig{NoiseModel::BitFlip, 0.5, NoisePlacement::InputQubit}),
                    std::invalid_argument);
}

TEST_CASE("apply_noise output is a valid density matrix everywhere") {
    Rng rng(13);
    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                               NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping})
        for (const NoisePlacement pl :
             {NoisePlacement::AliceChannelQubit, NoisePlacement::BothChannelQubits})
            for (int t = 0; t < 5; ++t) {
                Matrix g(4, 4);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        g(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
                Matrix h = g * dagger(g);
                const DensityMatrix rho(h * cplx(1.0 / trace(h).real(), 0));
                const DensityMatrix out = apply_noise(rho, {m, rng.uniform(), pl});
                CHECK(is_density_matrix(out, 1e-9, 1e-9));
            }
}

TEST_CASE("both-qubit noise equals two sequential lifts") {
    Rng rng(19);
    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                               NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping}) {
        const double p = rng.uniform();
        const KrausSet k = kraus_for(m, p);
        const DensityMatrix via_product = apply_noise(bell_pair(), {m, p, NoisePlacement::BothChannelQubits});
        const DensityMatrix via_seq =
            apply_channel(apply_channel(bell_pair(), lift_single(k, 0, 2)), lift_single(k, 1, 2));
        CHECK(max_abs(via_product.m - via_seq.m) <= 1e-12);
    }
}

TEST_CASE("name round-trips") {
    for (const NoiseModel m : {NoiseModel::BitFlip, NoiseModel::PhaseFlip,
                               NoiseModel::Depolarizing, NoiseModel::AmplitudeDamping})
        CHECK(parse_noise_model(to_string(m)) == m);
    CHECK(parse_noise_model("ad") == NoiseModel::AmplitudeDamping);
    for (const NoisePlacement p : {NoisePlacement::InputQubit, NoisePlacement::AliceChannelQubit,
                                   NoisePlacement::BothChannelQubits})
        CHECK(parse_placement(to_string(p)) == p);
    CHECK_THROWS_AS(parse_noise_model("thermal"), std::invalid_argument);
}
