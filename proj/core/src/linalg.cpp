#include "smoothfem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sfem {

Matrix Matrix::identity(int n)
{
    Matrix I(n, n);
    for (int i = 0; i < n; ++i)
        I(i, i) = 1.0;
    return I;
}

Matrix matmul(const Matrix& A, const Matrix& B)
{
    if (A.cols() != B.rows())
        throw std::invalid_argument("matmul: shape mismatch");
    Matrix C(A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int k = 0; k < A.cols(); ++k) {
            const double a = A(i, k);
            if (a == 0.0)
                continue;
            const double* brow = B.row(k);
            double* crow = C.row(i);
            for (int j = 0; j < B.cols(); ++j)
                crow[j] += a * brow[j];
        }
    return C;
}

Matrix matmul_nt(const Matrix& A, const Matrix& B)
{
    if (A.cols() != B.cols())
        throw std::invalid_argument("matmul_nt: shape mismatch");
    Matrix C(A.rows(), B.rows());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.rows(); ++j) {
            const double* arow = A.row(i);
            const double* brow = B.row(j);
            double s = 0.0;
            for (int k = 0; k < A.cols(); ++k)
                s += arow[k] * brow[k];
            C(i, j) = s;
        }
    return C;
}

Matrix invert_small(const Matrix& A, double* det)
{
    const int n = A.rows();
    if (n != A.cols() || n < 1 || n > 3)
        throw std::invalid_argument("invert_small: expected square matrix of size <= 3");
    Matrix inv(n, n);
    double d = 0.0;
    if (n == 1) {
        d = A(0, 0);
        inv(0, 0) = 1.0 / d;
    } else if (n == 2) {
        d = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
        inv(0, 0) = A(1, 1) / d;
        inv(0, 1) = -A(0, 1) / d;
        inv(1, 0) = -A(1, 0) / d;
        inv(1, 1) = A(0, 0) / d;
    } else {
        const double c00 = A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
        const double c01 = A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2);
        const double c02 = A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0);
        d = A(0, 0) * c00 + A(0, 1) * c01 + A(0, 2) * c02;
        inv(0, 0) = c00 / d;
        inv(1, 0) = c01 / d;
        inv(2, 0) = c02 / d;
        inv(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / d;
        inv(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / d;
        inv(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / d;
        inv(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / d;
        inv(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / d;
        inv(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / d;
    }
    if (det)
        *det = d;
    return inv;
}

LuFactor::LuFactor(Matrix A) : lu_(std::move(A))
{
    const int n = lu_.rows();
    if (n != lu_.cols())
        throw std::invalid_argument("LuFactor: matrix must be square");
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), 0);

    double pmax = 0.0, pmin = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                piv = i;
            }
        if (best == 0.0)
            throw std::runtime_error("LuFactor: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        const double dk = std::abs(lu_(k, k));
        pmax = (k == 0) ? dk : std::max(pmax, dk);
        pmin = (k == 0) ? dk : std::min(pmin, dk);
        const double inv = 1.0 / lu_(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = lu_(i, k) * inv;
            lu_(i, k) = m;
            if (m == 0.0)
                continue;
            for (int j = k + 1; j < n; ++j)
                lu_(i, j) -= m * lu_(k, j);
        }
    }
    growth_ = (pmin > 0.0) ? pmax / pmin : std::numeric_limits<double>::infinity();
}

void LuFactor::solve(const double* b, double* x) const
{
    const int n = lu_.rows();
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double s = b[perm_[i]];
        for (int j = 0; j < i; ++j)
            s -= lu_(i, j) * y[j];
        y[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < n; ++j)
            s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
}

std::vector<double> LuFactor::solve(const std::vector<double>& b) const
{
    std::vector<double> x(b.size());
    solve(b.data(), x.data());
    return x;
}

std::vector<double> ldlt_solve(const Matrix& A, const std::vector<double>& b)
{
    const int n = A.rows();
    Matrix L = A;
    std::vector<double> d(n);
    for (int j = 0; j < n; ++j) {
        double dj = L(j, j);
        for (int k = 0; k < j; ++k)
            dj -= L(j, k) * L(j, k) * d[k];
        if (dj == 0.0)
            throw std::runtime_error("ldlt_solve: zero pivot at " + std::to_string(j));
        d[j] = dj;
        for (int i = j + 1; i < n; ++i) {
            double v = L(i, j);
            for (int k = 0; k < j; ++k)
                v -= L(i, k) * L(j, k) * d[k];
            L(i, j) = v / dj;
        }
    }
    std::vector<double> x(b);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            x[i] -= L(i, j) * x[j];
    for (int i = 0; i < n; ++i)
        x[i] /= d[i];
    for (int i = n - 1; i >= 0; --i)
        for (int j = i + 1; j < n; ++j)
            x[i] -= L(j, i) * x[j];
    return x;
}

Csr Csr::from_triplets(int n, std::vector<int>& rows, std::vector<int>& cols,
                       std::vector<double>& vals)
{
    Csr m;
    m.n = n;
    const std::size_t nnz_in = vals.size();
    std::vector<std::size_t> order(nnz_in);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a] != rows[b])
            return rows[a] < rows[b];
        return cols[a] < cols[b];
    });

    m.row_ptr.assign(n + 1, 0);
    for (std::size_t oi = 0; oi < nnz_in; ++oi) {
        const std::size_t t = order[oi];
        if (!m.col.empty() && !m.row_ptr.empty() && oi > 0) {
            const std::size_t prev = order[oi - 1];
            if (rows[prev] == rows[t] && cols[prev] == cols[t]) {
                m.val.back() += vals[t];
                continue;
            }
        }
        m.col.push_back(cols[t]);
        m.val.push_back(vals[t]);
        ++m.row_ptr[rows[t] + 1];
    }
    for (int i = 0; i < n; ++i)
        m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

void Csr::multiply(const double* x, double* y) const
{
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
            s += val[p] * x[col[p]];
        y[i] = s;
    }
}

double Csr::symmetric_deviation() const
{
    // max |A_ij - A_ji| over stored entries
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
            const int j = col[p];
            double aji = 0.0;
            for (int q = row_ptr[j]; q < row_ptr[j + 1]; ++q)
                if (col[q] == i) {
                    aji = val[q];
                    break;
                }
            dev = std::max(dev, std::abs(val[p] - aji));
        }
    return dev;
}

std::vector<double> Csr::diagonal() const
{
    std::vector<double> d(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
            if (col[p] == i)
                d[i] = val[p];
    return d;
}

Matrix Csr::dense() const
{
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
            A(i, col[p]) = val[p];
    return A;
}

CgResult cg_solve(const Csr& A, const std::vector<double>& b, double tol, int max_iter)
{
    const int n = A.n;
    CgResult res;
    res.x.assign(n, 0.0);

    std::vector<double> d = A.diagonal();
    for (double& v : d)
        v = (v != 0.0) ? 1.0 / v : 1.0;

    std::vector<double> r(b), z(n), p(n), q(n);
    double bnorm = 0.0;
    for (double v : b)
        bnorm += v * v;
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }

    for (int i = 0; i < n; ++i)
        z[i] = d[i] * r[i];
    p = z;
    double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);

    for (int it = 0; it < max_iter; ++it) {
        A.multiply(p.data(), q.data());
        const double pq = std::inner_product(p.begin(), p.end(), q.begin(), 0.0);
        if (pq <= 0.0)
            break;  // not SPD along p; bail out to the caller's fallback
        const double alpha = rz / pq;
        for (int i = 0; i < n; ++i) {
            res.x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        double rnorm = 0.0;
        for (double v : r)
            rnorm += v * v;
        rnorm = std::sqrt(rnorm);
        res.iterations = it + 1;
        res.relative_residual = rnorm / bnorm;
        res.residual_history.push_back(res.relative_residual);
        if (res.relative_residual <= tol) {
            res.converged = true;
            break;
        }
        for (int i = 0; i < n; ++i)
            z[i] = d[i] * r[i];
        const double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i)
            p[i] = z[i] + beta * p[i];
    }
    return res;
}

} // namespace sfem
