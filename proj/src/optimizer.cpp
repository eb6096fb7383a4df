#include "teleopt/optimizer.hpp"

#include <cmath>

namespace teleopt {

const std::array<const char*, 27>& param_names() {
    static const std::array<const char*, 27> names = {
        "phi",      "theta",    "lambda",   "a_Re",     "a_Im",     "b_Re",     "b_Im",
        "c_Re",     "c_Im",     "d_Re",     "d_Im",     "J0_00_Re", "J0_00_Im", "J0_01_Re",
        "J0_01_Im", "J0_10_Re", "J0_10_Im", "J0_11_Re", "J0_11_Im", "J1_00_Re", "J1_00_Im",
        "J1_01_Re", "J1_01_Im", "J1_10_Re", "J1_10_Im", "J1_11_Re", "J1_11_Im"};
    return names;
}

ParamVector flatten(const ProtocolParams& p) {
    ParamVector v{};
    v[0] = p.meas.phi;
    v[1] = p.meas.theta;
    v[2] = p.meas.lambda;
    const cplx cs[4] = {p.channel.a, p.channel.b, p.channel.c, p.channel.d};
    for (int i = 0; i < 4; ++i) {
        v[3 + 2 * i] = cs[i].real();
        v[4 + 2 * i] = cs[i].imag();
    }
    int k = 11;
    for (const Matrix* j : {&p.post.j0, &p.post.j1})
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                v[k++] = (*j)(r, c).real();
                v[k++] = (*j)(r, c).imag();
            }
    return v;
}

namespace {

Matrix kraus_from(const ParamVector& v, int offset) {
    Matrix m(2, 2);
    int k = offset;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            m(r, c) = cplx(v[k], v[k + 1]);
            k += 2;
        }
    return m;
}

// S^{-1/2} for Hermitian positive definite 2x2 S, expressed as alpha I + beta S.
Matrix inv_sqrt_2x2(const Matrix& s) {
    const double s00 = s(0, 0).real(), s11 = s(1, 1).real();
    const cplx s01 = s(0, 1);
    const double mid = 0.5 * (s00 + s11);
    const double rad = std::sqrt(0.25 * (s00 - s11) * (s00 - s11) + std::norm(s01));
    const double lo = mid - rad, hi = mid + rad;
    if (lo <= 1e-9) throw ProjectionError("project_feasible: Kraus pair nearly singular");
    if (rad <= 1e-14 * hi) {
        const double inv = 1.0 / std::sqrt(mid);
        return Matrix{2, 2, {inv, 0, 0, inv}};
    }
    const double beta = (1.0 / std::sqrt(hi) - 1.0 / std::sqrt(lo)) / (hi - lo);
    const double alpha = 1.0 / std::sqrt(hi) - beta * hi;
    Matrix r = s * cplx(beta, 0);
    r(0, 0) += alpha;
    r(1, 1) += alpha;
    return r;
}

}  // namespace

ProtocolParams project_feasible(const ParamVector& raw, Variant variant) {
    ProtocolParams out;
    out.variant = variant;
    if (variant != Variant::BellBaseline) out.meas = {raw[0], raw[1], raw[2]};

    if (variant == Variant::FullyAdaptive) {
        double n2 = 0;
        for (int i = 3; i < 11; ++i) n2 += raw[i] * raw[i];
        const double n = std::sqrt(n2);
        if (n <= 1e-9) throw ProjectionError("project_feasible: degenerate channel norm");
        out.channel.a = cplx(raw[3], raw[4]) / n;
        out.channel.b = cplx(raw[5], raw[6]) / n;
        out.channel.c = cplx(raw[7], raw[8]) / n;
        out.channel.d = cplx(raw[9], raw[10]) / n;

        const Matrix j0 = kraus_from(raw, 11), j1 = kraus_from(raw, 19);
        const Matrix s = dagger(j0) * j0 + dagger(j1) * j1;
        const Matrix fix = inv_sqrt_2x2(s);
        out.post.j0 = j0 * fix;
        out.post.j1 = j1 * fix;
    }
    return out;
}

std::array<bool, 27> variant_mask(Variant variant) {
    std::array<bool, 27> m{};
    switch (variant) {
        case Variant::BellBaseline:
            break;
        case Variant::RotatedBasis:
            m[0] = m[1] = m[2] = true;
            break;
        case Variant::FullyAdaptive:
            m.fill(true);
            break;
    }
    return m;
}

ParamVector perturb(const ParamVector& x, double sigma, Rng& rng,
                    const std::array<bool, 27>& active_mask) {
    ParamVector out = x;
    for (int i = 0; i < 27; ++i)
        if (active_mask[i]) out[i] += sigma * rng.gaussian();
    return out;
}

OptResult hill_climb(const Objective& objective, const ProtocolParams& init,
                     const OptimizerConfig& cfg) {
    Rng rng(cfg.seed);
    ProtocolParams cur = init;
    double f_cur = objective(cur);
    OptResult res{cur, f_cur, {}};
    res.trace.reserve(cfg.iterations);

    double sigma = cfg.sigma0;
    int failures = 0;
    for (int t = 0; t < cfg.iterations; ++t) {
        ProtocolParams prop;
        for (;;) {
            try {
                prop = project_feasible(perturb(flatten(cur), sigma, rng, cfg.active_mask),
                                        init.variant);
                failures = 0;
                break;
            } catch (const ProjectionError&) {
                if (++failures > 100)
                    throw SearchError("hill_climb: repeated projection failure");
            }
        }
        const double f_prop = objective(prop);
        bool accepted = f_prop > f_cur;
        if (!accepted) accepted = rng.uniform() <= cfg.explore_prob;

        if (f_prop > res.fidelity) {
            res.fidelity = f_prop;
            res.params = prop;
        }
        if (accepted) {
            cur = prop;
            f_cur = f_prop;
        }
        res.trace.push_back({t, f_prop, accepted, res.fidelity, sigma});
        sigma *= cfg.decay;
    }
    return res;
}

OptResult finite_diff_gradient_ascent(const Objective& objective, const ProtocolParams& init,
                                      const OptimizerConfig& cfg) {
    constexpr double h = 1e-5;
    const double eta = cfg.sigma0;
    const Variant variant = init.variant;

    auto eval_raw = [&](const ParamVector& v) {
        try {
            return objective(project_feasible(v, variant));
        } catch (const ProjectionError& e) {
            throw SearchError(std::string("gradient ascent: ") + e.what());
        }
    };

    ParamVector raw = flatten(init);
    ProtocolParams cur = init;
    double f_cur = objective(cur);
    OptResult res{cur, f_cur, {}};
    res.trace.reserve(cfg.iterations);

    for (int t = 0; t < cfg.iterations; ++t) {
        for (int i = 0; i < 27; ++i) {
            if (!cfg.active_mask[i]) continue;
            ParamVector hi = raw, lo = raw;
            hi[i] += h;
            lo[i] -= h;
            const double g = (eval_raw(hi) - eval_raw(lo)) / (2 * h);
            raw[i] += eta * g;
        }
        try {
            cur = project_feasible(raw, variant);
        } catch (const ProjectionError& e) {
            throw SearchError(std::string("gradient ascent: ") + e.what());
        }
        raw = flatten(cur);
        f_cur = objective(cur);
        if (f_cur > res.fidelity) {
            res.fidelity = f_cur;
            res.params = cur;
        }
        res.trace.push_back({t, f_cur, true, res.fidelity, eta});
    }
    return res;
}

CubicFit fit_cubic(const std::vector<double>& ps, const std::vector<double>& ys) {
    if (ps.size() != ys.size()) throw std::invalid_argument("fit_cubic: length mismatch");
    std::vector<double> distinct;
    for (double p : ps) {
        bool seen = false;
        for (double q : distinct) seen = seen || p == q;
        if (!seen) distinct.push_back(p);
    }
    if (distinct.size() < 4)
        throw std::invalid_argument("fit_cubic: need at least 4 distinct abscissae");

    const int n = static_cast<int>(ps.size());
    // Householder QR of the n x 4 Vandermonde [p^3 p^2 p 1]
    std::vector<std::array<double, 4>> v(n);
    std::vector<double> y = ys;
    for (int i = 0; i < n; ++i) {
        const double p = ps[i];
        v[i] = {p * p * p, p * p, p, 1.0};
    }
    for (int k = 0; k < 4; ++k) {
        double nrm = 0;
        for (int i = k; i < n; ++i) nrm += v[i][k] * v[i][k];
        nrm = std::sqrt(nrm);
        if (nrm == 0) continue;
        const double alpha = v[k][k] >= 0 ? -nrm : nrm;
        std::vector<double> w(n, 0.0);
        w[k] = v[k][k] - alpha;
        for (int i = k + 1; i < n; ++i) w[i] = v[i][k];
        double wn = 0;
        for (int i = k; i < n; ++i) wn += w[i] * w[i];
        if (wn == 0) continue;
        for (int j = k; j < 4; ++j) {
            double dot = 0;
            for (int i = k; i < n; ++i) dot += w[i] * v[i][j];
            const double f = 2 * dot / wn;
            for (int i = k; i < n; ++i) v[i][j] -= f * w[i];
        }
        double dot = 0;
        for (int i = k; i < n; ++i) dot += w[i] * y[i];
        const double f = 2 * dot / wn;
        for (int i = k; i < n; ++i) y[i] -= f * w[i];
    }
    CubicFit fit{};
    for (int k = 3; k >= 0; --k) {
        double s = y[k];
        for (int j = k + 1; j < 4; ++j) s -= v[k][j] * fit.coeffs[j];
        fit.coeffs[k] = s / v[k][k];
    }
    double r2 = 0;
    for (int i = 4; i < n; ++i) r2 += y[i] * y[i];
    fit.residual = std::sqrt(r2);
    return fit;
}

double eval_cubic(const std::array<double, 4>& c, double p) {
    return ((c[0] * p + c[1]) * p + c[2]) * p + c[3];
}

}  // namespace teleopt
