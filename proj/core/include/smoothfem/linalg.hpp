#ifndef SMOOTHFEM_LINALG_HPP
#define SMOOTHFEM_LINALG_HPP

#include <cstddef>
#include <vector>

namespace sfem {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }

    std::vector<double>& data() { return a_; }
    const std::vector<double>& data() const { return a_; }

    static Matrix identity(int n);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

/// C = A * B.
Matrix matmul(const Matrix& A, const Matrix& B);
/// C = A * B^T.
Matrix matmul_nt(const Matrix& A, const Matrix& B);

/// Inverse of a small (d <= 3) matrix via cofactors; det output optional.
Matrix invert_small(const Matrix& A, double* det = nullptr);

/// LU factorization with partial pivoting, kept for repeated solves.
class LuFactor {
public:
    explicit LuFactor(Matrix A);

    void solve(const double* b, double* x) const;
    std::vector<double> solve(const std::vector<double>& b) const;

    /// max |U_ii| / min |U_ii|: cheap conditioning indicator.
    double pivot_growth() const { return growth_; }

private:
    Matrix lu_;
    std::vector<int> perm_;
    double growth_ = 1.0;
};

/// Dense symmetric (lower-stored) LDL^T solve, in place on a copy.
std::vector<double> ldlt_solve(const Matrix& A, const std::vector<double>& b);

/// Row-compressed sparse matrix assembled deterministically from triplets.
struct Csr {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    static Csr from_triplets(int n, std::vector<int>& rows, std::vector<int>& cols,
                             std::vector<double>& vals);

    void multiply(const double* x, double* y) const;
    double symmetric_deviation() const;
    std::vector<double> diagonal() const;
    Matrix dense() const;
};

struct CgResult {
    std::vector<double> x;
    bool converged = false;
    int iterations = 0;
    double relative_residual = 0.0;
    std::vector<double> residual_history;
};

/// Jacobi-preconditioned conjugate gradients; target is relative residual.
CgResult cg_solve(const Csr& A, const std::vector<double>& b, double tol, int max_iter);

} // namespace sfem

#endif
