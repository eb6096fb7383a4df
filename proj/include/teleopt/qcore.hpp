#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Dense complex linear algebra for 1-3 qubit systems (dims 2, 4, 8).
// Everything here is a pure value type; all operations return new values
// and never mutate their inputs, so sharing across threads is safe.
//
// Qubit index convention: qubit 0 is the leftmost tensor factor, i.e. the
// most significant bit of a basis-state index |q0 q1 q2>.

namespace teleopt {

using cplx = std::complex<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    Matrix(int rows, int cols, std::initializer_list<cplx> entries);

    static Matrix identity(int n);
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(cplx s) const;

    bool finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

Matrix operator*(cplx s, const Matrix& m);

struct PureState {
    std::vector<cplx> amp;

    PureState() = default;
    explicit PureState(std::vector<cplx> a) : amp(std::move(a)) {}

    int dim() const { return static_cast<int>(amp.size()); }
    double norm() const;
};

struct DensityMatrix {
    Matrix m;

    DensityMatrix() = default;
    explicit DensityMatrix(Matrix mat) : m(std::move(mat)) {}

    int dim() const { return m.rows(); }
};

/// A CPTP map as a list of equal-shaped Kraus operators.
struct KrausSet {
    std::vector<Matrix> ops;

    int dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

// -- operations ------------------------------------------------------------

/// Kronecker product a (x) b.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Conjugate transpose.
Matrix dagger(const Matrix& a);

cplx trace(const Matrix& a);

/// Largest |entry| of a.
double max_abs(const Matrix& a);

/// Reduce rho over the complement of `keep`; kept qubits stay in their
/// original relative order. rho must act on 2^qubit_count dimensions.
DensityMatrix partial_trace(const DensityMatrix& rho, int qubit_count,
                            const std::vector<int>& keep);

/// rho -> sum_k E_k rho E_k^dag.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& k);

/// Max-entry norm of sum_k E_k^dag E_k - I.
double completeness_defect(const KrausSet& k);

/// Re <psi|rho|psi>, clamped to [0, 1].
double pure_fidelity(const DensityMatrix& rho, const PureState& psi);

// -- validators (used by tests and selftest, not by hot loops) --------------

/// Eigenvalues of a Hermitian matrix, ascending (cyclic Jacobi).
std::vector<double> hermitian_eigenvalues(const Matrix& a);

double hermiticity_defect(const Matrix& a);

/// Hermitian within 1e-10, unit trace within 1e-10, eigenvalues >= -1e-8.
bool is_density_matrix(const DensityMatrix& rho, double herm_tol = 1e-10,
                       double trace_tol = 1e-10, double psd_tol = 1e-8);

}  // namespace teleopt
