#pragma once

#include <functional>

#include "smx/csc.hpp"
#include "smx/dense.hpp"

namespace smx {

/// Result of an iterative norm/eigenvalue estimate. `converged` is false when
/// the iteration cap was hit; `value` then carries the best estimate.
struct NormEstimate {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Condition number estimate for an SPD matrix, kappa = lambda_max/lambda_min.
struct CondEstimate {
    double kappa = 0.0;
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    bool converged = false;
};

/// Matrix-free action of an n x n operator and of its transpose.
struct LinearOperator {
    index_t n;
    std::function<void(const double*, double*)> apply;
    std::function<void(const double*, double*)> apply_transposed;
};

/// Spectral norm ||M||_2 = sqrt(lambda_max(M^T M)) by power iteration on
/// M^T M with a fixed-seed start vector. Stops when the relative change
/// between successive estimates drops below tol.
NormEstimate spectral_norm(const LinearOperator& op, double tol = 1e-9, int max_iter = 1000);
NormEstimate spectral_norm(const DenseMatrix& m, double tol = 1e-9, int max_iter = 1000);
NormEstimate spectral_norm(const CscMatrix& m, double tol = 1e-9, int max_iter = 1000);

/// kappa(A) for SPD A: power iteration for lambda_max, CG-based inverse
/// iteration for lambda_min. Accuracy target is a factor of 2. Throws
/// NotSymmetric for asymmetric input and BreakdownOnIndefinite when the
/// inner CG hits a nonpositive curvature direction. cg_max_iter caps each
/// inner solve (default 5n); a tight cap trades accuracy for bounded cost
/// on ill-conditioned input, underestimating kappa.
CondEstimate estimate_condition(const CscMatrix& a, double tol = 1e-4, int max_iter = 200,
                                int cg_max_iter = -1);

}  // namespace smx
