#include "teleopt/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace teleopt {

Matrix::Matrix(int rows, int cols, std::initializer_list<cplx> entries)
    : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("Matrix: initializer size does not match shape");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Matrix+: shape mismatch");
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Matrix-: shape mismatch");
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix*: shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx v = (*this)(i, k);
            if (v == cplx{}) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

Matrix Matrix::operator*(cplx s) const {
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

Matrix operator*(cplx s, const Matrix& m) { return m * s; }

bool Matrix::finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double PureState::norm() const {
    double s = 0;
    for (const cplx& v : amp) s += std::norm(v);
    return std::sqrt(s);
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx v = a(i, j);
            if (v == cplx{}) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
        }
    return r;
}

Matrix dagger(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

cplx trace(const Matrix& a) {
    cplx t = 0;
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

double max_abs(const Matrix& a) {
    double m = 0;
    for (const cplx& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int qubit_count,
                            const std::vector<int>& keep) {
    const int dim = 1 << qubit_count;
    if (rho.dim() != dim) throw std::invalid_argument("partial_trace: dim != 2^qubit_count");
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    std::vector<bool> kept(qubit_count, false);
    for (int q : keep) {
        if (q < 0 || q >= qubit_count) throw std::invalid_argument("partial_trace: index out of range");
        if (kept[q]) throw std::invalid_argument("partial_trace: duplicate index");
        kept[q] = true;
    }
    std::vector<int> keep_sorted, traced;
    for (int q = 0; q < qubit_count; ++q) (kept[q] ? keep_sorted : traced).push_back(q);

    const int kn = static_cast<int>(keep_sorted.size());
    const int tn = qubit_count - kn;
    const int kd = 1 << kn, td = 1 << tn;

    // bit q of an index (qubit 0 = MSB)
    auto bit_shift = [&](int q) { return qubit_count - 1 - q; };

    Matrix out(kd, kd);
    for (int r = 0; r < kd; ++r)
        for (int c = 0; c < kd; ++c) {
            cplx s = 0;
            for (int t = 0; t < td; ++t) {
                int row = 0, col = 0;
                for (int b = 0; b < kn; ++b) {
                    const int q = keep_sorted[b];
                    row |= ((r >> (kn - 1 - b)) & 1) << bit_shift(q);
                    col |= ((c >> (kn - 1 - b)) & 1) << bit_shift(q);
                }
                for (int b = 0; b < tn; ++b) {
                    const int q = traced[b];
                    const int bv = (t >> (tn - 1 - b)) & 1;
                    row |= bv << bit_shift(q);
                    col |= bv << bit_shift(q);
                }
                s += rho.m(row, col);
            }
            out(r, c) = s;
        }
    return DensityMatrix(out);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& k) {
    if (k.ops.empty()) throw std::invalid_argument("apply_channel: empty Kraus set");
    if (k.dim() != rho.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
    Matrix out(rho.dim(), rho.dim());
    for (const Matrix& e : k.ops) out = out + e * rho.m * dagger(e);
    return DensityMatrix(out);
}

double completeness_defect(const KrausSet& k) {
    if (k.ops.empty()) return 1.0;
    const int n = k.dim();
    Matrix s(n, n);
    for (const Matrix& e : k.ops) s = s + dagger(e) * e;
    return max_abs(s - Matrix::identity(n));
}

double pure_fidelity(const DensityMatrix& rho, const PureState& psi) {
    if (rho.dim() != psi.dim()) throw std::invalid_argument("pure_fidelity: dimension mismatch");
    cplx v = 0;
    for (int i = 0; i < rho.dim(); ++i) {
        cplx row = 0;
        for (int j = 0; j < rho.dim(); ++j) row += rho.m(i, j) * psi.amp[j];
        v += std::conj(psi.amp[i]) * row;
    }
    return std::clamp(v.real(), 0.0, 1.0);
}

std::vector<double> hermitian_eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigenvalues: not square");
    const int n = a.rows();
    Matrix m = a;
    // symmetrize to drop round-off skew
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 0.5 * (m(i, j) + std::conj(a(j, i)));

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += std::norm(m(i, j));
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = m(p, p).real(), aqq = m(q, q).real();
                // unitary 2x2 rotation annihilating m(p,q)
                const double phase = std::arg(apq);
                const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), app - aqq);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * std::exp(cplx(0, phase));
                for (int k = 0; k < n; ++k) {
                    const cplx mk_p = m(k, p), mk_q = m(k, q);
                    m(k, p) = c * mk_p + std::conj(s) * mk_q;
                    m(k, q) = -s * mk_p + c * mk_q;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx mp_k = m(p, k), mq_k = m(q, k);
                    m(p, k) = c * mp_k + s * mq_k;
                    m(q, k) = -std::conj(s) * mp_k + c * mq_k;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

double hermiticity_defect(const Matrix& a) {
    double d = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

bool is_density_matrix(const DensityMatrix& rho, double herm_tol, double trace_tol,
                       double psd_tol) {
    if (rho.m.rows() != rho.m.cols() || !rho.m.finite()) return false;
    if (hermiticity_defect(rho.m) > herm_tol) return false;
    if (std::abs(trace(rho.m) - 1.0) > trace_tol) return false;
    const auto ev = hermitian_eigenvalues(rho.m);
    return ev.front() >= -psd_tol;
}

}  // namespace teleopt
