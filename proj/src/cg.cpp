#include "smx/cg.hpp"

#include <cmath>

#include "smx/errors.hpp"
#include "smx/ilu0.hpp"

namespace smx {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// CG on an abstract SPD operator. Used directly for the plain solve and
/// with the K^T A K composition for the split-preconditioned one.
template <typename Apply>
CgReport cg_on_operator(index_t n, const Apply& apply_a, const std::vector<double>& b, double tol,
                        int max_iter) {
    const std::size_t nn = static_cast<std::size_t>(n);
    CgReport report;
    report.x.assign(nn, 0.0);

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        report.converged = true;
        return report;
    }

    std::vector<double> r = b;
    std::vector<double> p = r;
    std::vector<double> ap(nn);
    double rr = dot(r, r);
    for (int it = 1; it <= max_iter; ++it) {
        apply_a(p.data(), ap.data());
        const double pap = dot(p, ap);
        if (pap <= 0.0) {
            throw Error(Errc::breakdown, "cg: p^T A p <= 0, matrix is not positive definite");
        }
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < nn; ++i) {
            report.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_next = dot(r, r);
        report.iterations = it;
        report.final_residual = std::sqrt(rr_next);
        if (report.final_residual < tol * bnorm) {
            report.converged = true;
            return report;
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < nn; ++i) p[i] = r[i] + beta * p[i];
    }
    return report;
}

}  // namespace

CgReport cg_solve(const CscMatrix& a, const std::vector<double>& b, double tol, int max_iter) {
    if (static_cast<index_t>(b.size()) != a.n) {
        throw Error(Errc::size_mismatch, "cg_solve: rhs length mismatch");
    }
    for (double v : b) {
        if (!std::isfinite(v)) throw Error(Errc::parse_error, "cg_solve: non-finite rhs entry");
    }
    if (max_iter < 0) max_iter = static_cast<int>(2 * a.n);
    return cg_on_operator(
        a.n, [&a](const double* in, double* out) { matvec(a, in, out); }, b, tol, max_iter);
}

CscMatrix make_sm_preconditioner(const CscMatrix& a, const SchedulerConfig& sched) {
    return submatrix_inverse_proot(a, MethodConfig::for_p(2), sched).first;
}

CgReport cg_solve_split_preconditioned(const CscMatrix& a, const std::vector<double>& b,
                                       const CscMatrix& k, double tol, int max_iter) {
    if (static_cast<index_t>(b.size()) != a.n || k.n != a.n) {
        throw Error(Errc::size_mismatch, "cg_solve_split_preconditioned: size mismatch");
    }
    if (max_iter < 0) max_iter = static_cast<int>(2 * a.n);

    // K^T applications reuse the forward kernel on the materialized transpose
    const CscMatrix kt = transpose(k);
    const std::size_t nn = static_cast<std::size_t>(a.n);

    std::vector<double> kt_b(nn);
    matvec(kt, b.data(), kt_b.data());

    std::vector<double> t1(nn), t2(nn);
    auto apply = [&](const double* in, double* out) {
        matvec(k, in, t1.data());        // t1 = K v
        matvec(a, t1.data(), t2.data()); // t2 = A K v
        matvec(kt, t2.data(), out);      // out = K^T A K v
    };
    CgReport report = cg_on_operator(a.n, apply, kt_b, tol, max_iter);

    // x = K y
    std::vector<double> x(nn);
    matvec(k, report.x.data(), x.data());
    report.x = std::move(x);
    return report;
}

CgReport cg_solve_ilu0_preconditioned(const CscMatrix& a, const std::vector<double>& b,
                                      const Ilu0Factors& f, double tol, int max_iter) {
    if (static_cast<index_t>(b.size()) != a.n) {
        throw Error(Errc::size_mismatch, "cg_solve_ilu0_preconditioned: rhs length mismatch");
    }
    if (max_iter < 0) max_iter = static_cast<int>(2 * a.n);
    const std::size_t nn = static_cast<std::size_t>(a.n);

    CgReport report;
    report.x.assign(nn, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        report.converged = true;
        return report;
    }

    // standard PCG; for symmetric A the zero-fill factors satisfy U = D L^T,
    // so M = LU acts as an SPD preconditioner
    std::vector<double> r = b;
    std::vector<double> z(nn);
    ilu0_apply(f, r.data(), z.data());
    std::vector<double> p = z;
    std::vector<double> ap(nn);
    double rz = dot(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        matvec(a, p.data(), ap.data());
        const double pap = dot(p, ap);
        if (pap <= 0.0) {
            throw Error(Errc::breakdown, "pcg: p^T A p <= 0, matrix is not positive definite");
        }
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < nn; ++i) {
            report.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        report.iterations = it;
        report.final_residual = norm2(r);
        if (report.final_residual < tol * bnorm) {
            report.converged = true;
            return report;
        }
        ilu0_apply(f, r.data(), z.data());
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < nn; ++i) p[i] = z[i] + beta * p[i];
    }
    return report;
}

}  // namespace smx
