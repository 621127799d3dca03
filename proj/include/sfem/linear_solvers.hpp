#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "sfem/errors.hpp"
#include "sfem/sparse.hpp"

namespace sfem {

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients. Requires a strictly positive
/// diagonal; iteration cap 10 n.
inline CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& rhs, double tol) {
    const int n = A.n_rows;
    if (A.n_cols != n || static_cast<int>(rhs.size()) != n)
        throw ParameterError("cg_solve: shape mismatch");

    std::vector<double> diag(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            if (A.col_idx[k] == i) diag[i] = A.values[k];
    for (int i = 0; i < n; ++i)
        if (!(diag[i] > 0.0)) throw NotSpdError("cg_solve: nonpositive diagonal entry");

    double bnorm = 0.0;
    for (double v : rhs) bnorm += v * v;
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) return {std::vector<double>(n, 0.0), 0, 0.0};

    std::vector<double> x(n, 0.0), r = rhs, z(n), p(n);
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rz = 0.0;
    for (int i = 0; i < n; ++i) rz += r[i] * z[i];

    const int max_iter = 10 * n;
    for (int it = 1; it <= max_iter; ++it) {
        const std::vector<double> Ap = A.apply(p);
        double pAp = 0.0;
        for (int i = 0; i < n; ++i) pAp += p[i] * Ap[i];
        if (!(pAp > 0.0)) throw NotSpdError("cg_solve: matrix is not positive definite");
        const double alpha = rz / pAp;
        double rnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
            rnorm += r[i] * r[i];
        }
        rnorm = std::sqrt(rnorm);
        if (rnorm <= tol * bnorm) return {std::move(x), it, rnorm / bnorm};
        double rz_new = 0.0;
        for (int i = 0; i < n; ++i) {
            z[i] = r[i] / diag[i];
            rz_new += r[i] * z[i];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw SolverError("cg_solve: no convergence within " + std::to_string(max_iter) +
                      " iterations");
}

struct CholeskyResult {
    bool positive_definite = false;
    std::vector<double> x;
};

namespace detail {

inline Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& A) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(A.values.size());
    for (int i = 0; i < A.n_rows; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            trip.emplace_back(i, A.col_idx[k], A.values[k]);
    Eigen::SparseMatrix<double> m(A.n_rows, A.n_cols);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

} // namespace detail

/// Sparse LDL^T factorization; a positive D certifies positive definiteness.
/// A nonpositive pivot yields positive_definite = false instead of throwing,
/// so the audit can consume the signal.
inline CholeskyResult cholesky_solve(const SparseMatrix& A, const std::vector<double>& rhs) {
    if (A.n_cols != A.n_rows || static_cast<int>(rhs.size()) != A.n_rows)
        throw ParameterError("cholesky_solve: shape mismatch");

    Eigen::SparseMatrix<double> M = detail::to_eigen(A);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(M);
    if (ldlt.info() != Eigen::Success) return {false, {}};
    const auto& D = ldlt.vectorD();
    for (Eigen::Index i = 0; i < D.size(); ++i)
        if (!(D[i] > 0.0)) return {false, {}};

    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), rhs.size());
    Eigen::VectorXd x = ldlt.solve(b);
    return {true, std::vector<double>(x.data(), x.data() + x.size())};
}

} // namespace sfem
