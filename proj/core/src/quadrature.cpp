#include "smoothfem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sfem {

namespace {

/// Cyclic Jacobi eigen decomposition of a small symmetric matrix.
/// Returns eigenvalues (ascending) and the matching normalized
/// eigenvectors as columns of V.
void symmetric_eigen(std::vector<std::vector<double>> A, std::vector<double>& eigval,
                     std::vector<std::vector<double>>& V)
{
    const int n = static_cast<int>(A.size());
    V.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        V[i][i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += A[p][q] * A[p][q];
        if (off < 1e-30)
            break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(A[p][q]) < 1e-300)
                    continue;
                const double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = A[i][p], aiq = A[i][q];
                    A[i][p] = c * aip - s * aiq;
                    A[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = A[p][i], aqi = A[q][i];
                    A[p][i] = c * api - s * aqi;
                    A[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = V[i][p], viq = V[i][q];
                    V[i][p] = c * vip - s * viq;
                    V[i][q] = s * vip + c * viq;
                }
            }
    }

    eigval.resize(n);
    for (int i = 0; i < n; ++i)
        eigval[i] = A[i][i];
    // sort ascending, carrying eigenvectors
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return eigval[a] < eigval[b]; });
    std::vector<double> ev(n);
    std::vector<std::vector<double>> W(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
        ev[j] = eigval[order[j]];
        for (int i = 0; i < n; ++i)
            W[i][j] = V[i][order[j]];
    }
    eigval = std::move(ev);
    V = std::move(W);
}

} // namespace

void gauss_jacobi_01(int n, int a, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1 || a < 0)
        throw std::invalid_argument("gauss_jacobi_01: bad arguments");

    // monic Jacobi recurrence on [-1,1] with weight (1-x)^a
    std::vector<double> alpha(n), beta(n);
    alpha[0] = -static_cast<double>(a) / (a + 2.0);
    beta[0] = std::pow(2.0, a + 1) / (a + 1.0);  // total mass of the weight
    for (int m = 1; m < n; ++m) {
        const double s = 2.0 * m + a;
        alpha[m] = -static_cast<double>(a) * a / (s * (s + 2.0));
        beta[m] = 4.0 * m * m * (m + a) * (m + a) / (s * s * (s + 1.0) * (s - 1.0));
    }

    std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        J[i][i] = alpha[i];
        if (i + 1 < n) {
            const double b = std::sqrt(beta[i + 1]);
            J[i][i + 1] = b;
            J[i + 1][i] = b;
        }
    }

    std::vector<double> x;
    std::vector<std::vector<double>> V;
    symmetric_eigen(std::move(J), x, V);

    nodes.resize(n);
    weights.resize(n);
    const double scale = std::pow(2.0, -(a + 1.0));
    for (int i = 0; i < n; ++i) {
        nodes[i] = 0.5 * (1.0 + x[i]);
        weights[i] = scale * beta[0] * V[0][i] * V[0][i];
    }
}

QuadratureRule quadrature(int d, int degree)
{
    if (d < 1 || d > 3)
        throw std::invalid_argument("quadrature: dimension must be 1..3");
    if (degree < 0 || degree > 30)
        throw std::invalid_argument("quadrature: unsupported degree " + std::to_string(degree));

    const int n = (degree + 2) / 2;  // 2n-1 >= degree

    // per-axis Gauss-Jacobi rules with the Duffy Jacobian exponents d-1..0
    std::vector<std::vector<double>> xs(d), ws(d);
    for (int axis = 0; axis < d; ++axis)
        gauss_jacobi_01(n, d - 1 - axis, xs[axis], ws[axis]);

    QuadratureRule rule;
    rule.dim = d;
    rule.degree = degree;
    rule.scheme = "gauss-jacobi-collapsed";

    std::vector<int> idx(d, 0);
    while (true) {
        double w = 1.0;
        std::vector<double> u(d);
        for (int axis = 0; axis < d; ++axis) {
            u[axis] = xs[axis][idx[axis]];
            w *= ws[axis][idx[axis]];
        }
        // Duffy map: x_j = u_j prod_{i<j} (1-u_i); lambda = (1-sum x, x...)
        std::vector<double> x(d);
        double shrink = 1.0;
        for (int j = 0; j < d; ++j) {
            x[j] = u[j] * shrink;
            shrink *= (1.0 - u[j]);
        }
        double lam0 = 1.0;
        for (int j = 0; j < d; ++j)
            lam0 -= x[j];
        rule.points.push_back(lam0);
        rule.points.insert(rule.points.end(), x.begin(), x.end());
        rule.weights.push_back(w);

        int axis = d - 1;
        while (axis >= 0 && ++idx[axis] == n) {
            idx[axis] = 0;
            --axis;
        }
        if (axis < 0)
            break;
    }

    // the raw weights integrate over the unit simplex (volume 1/d!);
    // normalize to sum to 1
    double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    for (double& w : rule.weights)
        w /= total;
    return rule;
}

} // namespace sfem
