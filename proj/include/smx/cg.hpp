#pragma once

#include <vector>

#include "smx/csc.hpp"
#include "smx/scheduler.hpp"
#include "smx/submatrix.hpp"

namespace smx {

/// Outcome of one CG solve. Non-convergence is not an error: `converged`
/// stays false and `iterations` equals the cap. `final_residual` is the
/// 2-norm of the residual of the system the iteration actually ran on.
struct CgReport {
    int iterations = 0;
    bool converged = false;
    double final_residual = 0.0;
    std::vector<double> x;
};

/// Conjugate gradient on symmetric A. Convergence on the relative residual
/// ||b - Ax||_2 / ||b||_2 < tol. Throws Breakdown on a nonpositive
/// curvature direction (indefinite matrix).
CgReport cg_solve(const CscMatrix& a, const std::vector<double>& b, double tol = 1e-6,
                  int max_iter = -1);

/// K ~ A^{-1/2} from the submatrix method (p = 2); same pattern as A.
CscMatrix make_sm_preconditioner(const CscMatrix& a, const SchedulerConfig& sched);

/// Split-preconditioned CG: solves K^T A K y = K^T b matrix-free (the triple
/// product is never formed) and returns x = K y. Iterations and the report
/// residual refer to the transformed system.
CgReport cg_solve_split_preconditioned(const CscMatrix& a, const std::vector<double>& b,
                                       const CscMatrix& k, double tol = 1e-6, int max_iter = -1);

/// Left-preconditioned CG with M = LU from the zero-fill factors (for
/// symmetric A these satisfy U = D L^T, so M is symmetric). Convergence on
/// the original system's relative residual.
struct Ilu0Factors;
CgReport cg_solve_ilu0_preconditioned(const CscMatrix& a, const std::vector<double>& b,
                                      const Ilu0Factors& f, double tol = 1e-6, int max_iter = -1);

}  // namespace smx
