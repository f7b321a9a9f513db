#pragma once

#include <cstdint>
#include <vector>

#include "smx/dense.hpp"

namespace smx {

/// LU factorization with partial row pivoting, LAPACK-style packed storage:
/// `lu` holds U on and above the diagonal and the unit-lower multipliers
/// below it; `perm` maps factored row k to original row perm[k], so that
/// (P A)[k][*] = A[perm[k]][*] and P A = L U.
struct LuFactors {
    std::int64_t m = 0;
    DenseMatrix lu;
    std::vector<std::int64_t> perm;
};

/// Symmetric eigendecomposition, eigenvalues ascending, orthonormal columns.
struct EigenDecomposition {
    std::int64_t m = 0;
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;
};

struct RefineResult {
    DenseMatrix x;
    int iterations = 0;
    double residual = 0.0;
};

/// Partial-pivoting LU. Throws SingularMatrix when a pivot falls below
/// 1e-14 * max|D|.
LuFactors lu_factor(const DenseMatrix& d);

/// Explicit inverse from LU factors, column by column (forward/back
/// substitution against unit vectors).
DenseMatrix lu_invert(const LuFactors& f);

/// Solve D x = b using the factors.
void lu_solve(const LuFactors& f, const double* b, double* x);

/// Cyclic Jacobi eigensolver for a symmetric matrix: rotations until
/// max offdiag < tol * ||D||_F, sweep cap 50. Input asymmetry beyond 1e-12
/// (relative to max|D|) is rejected.
EigenDecomposition sym_eig(const DenseMatrix& d, double tol = 1e-14);

/// X ~ D^{-1/p} for SPD D. p = 1 goes through LU; p >= 2 through the
/// eigendecomposition X = V diag(lambda^{-1/p}) V^T (symmetric by
/// construction). Rejects matrices with lambda_min <= 1e-12 * lambda_max.
DenseMatrix inverse_proot_dense(const DenseMatrix& d, int p);

/// The eigendecomposition route for any p >= 1 (also usable for plain
/// inversion of symmetric matrices).
DenseMatrix inverse_proot_eig(const DenseMatrix& d, int p);

/// Newton refinement X_{k+1} = (1/p) X_k ((p+1) I - A X_k^p) toward A^{-1/p},
/// starting from x0. Stops when ||X^p A - I||_2 < tol. The returned iterate
/// never has a larger residual than x0; two consecutive residual increases
/// abort with Diverged.
///
/// Convergence domain (measured): for p = 1 the update is Newton-Schulz,
/// S_{k+1} = -S_k^2 with S = XA - I, quadratic from any start with
/// ||S_0|| < 1. For p >= 2 the error components that do not commute with A
/// contract at rate |1 - (1/p) sum_{k<p} s^k|, s = (lambda_i/lambda_j)^{1/p},
/// so a general (noncommuting) start needs roughly kappa(A) < 9 for p = 2
/// and kappa(A) < 8 for p = 3, and is fast only well inside that range.
RefineResult refine_inverse_proot(const DenseMatrix& a, const DenseMatrix& x0, int p, double tol,
                                  int max_iter);

}  // namespace smx
