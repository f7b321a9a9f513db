#include "smx/norms.hpp"

#include <cmath>
#include <vector>

#include "smx/errors.hpp"
#include "smx/rng.hpp"

namespace smx {

namespace {

constexpr std::uint64_t kStartVectorSeed = 0x243f6a8885a308d3ull;

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

std::vector<double> start_vector(index_t n) {
    Rng rng(kStartVectorSeed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    double s = norm2(v);
    if (s == 0.0) {  // cannot happen with the fixed seed; keep the all-ones fallback anyway
        v.assign(static_cast<std::size_t>(n), 1.0);
        s = std::sqrt(static_cast<double>(n));
    }
    for (double& x : v) x /= s;
    return v;
}

/// Plain CG on SPD A, relative residual tolerance. Used only for the
/// inverse-iteration solves inside estimate_condition; the application-level
/// solver with reporting lives in the apps layer.
int cg_solve_internal(const CscMatrix& a, const std::vector<double>& b, std::vector<double>& x,
                      double tol, int max_iter) {
    const std::size_t n = b.size();
    x.assign(n, 0.0);
    std::vector<double> r = b;
    std::vector<double> p = r;
    std::vector<double> ap(n);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return 0;
    double rr = dot(r, r);
    for (int it = 1; it <= max_iter; ++it) {
        matvec(a, p.data(), ap.data());
        const double pap = dot(p, ap);
        if (pap <= 0.0) {
            throw Error(Errc::breakdown_on_indefinite,
                        "estimate_condition: nonpositive curvature, matrix is not positive definite");
        }
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_next = dot(r, r);
        if (std::sqrt(rr_next) < tol * bnorm) return it;
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    return max_iter;
}

}  // namespace

NormEstimate spectral_norm(const LinearOperator& op, double tol, int max_iter) {
    if (tol <= 0.0) throw Error(Errc::infeasible_spec, "spectral_norm: tol must be positive");
    const std::size_t n = static_cast<std::size_t>(op.n);
    if (n == 0) return {0.0, true, 0};

    std::vector<double> v = start_vector(op.n);
    std::vector<double> w(n), u(n);
    double sigma = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        op.apply(v.data(), w.data());
        const double s = norm2(w);
        if (s == 0.0) return {0.0, true, it};
        op.apply_transposed(w.data(), u.data());
        const double t = norm2(u);
        if (t == 0.0) return {s, true, it};
        for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / t;
        const double prev = sigma;
        sigma = s;
        if (it > 1 && std::fabs(sigma - prev) <= tol * std::fabs(sigma)) {
            return {sigma, true, it};
        }
    }
    return {sigma, false, max_iter};
}

NormEstimate spectral_norm(const DenseMatrix& m, double tol, int max_iter) {
    LinearOperator op{m.dim(), [&m](const double* x, double* y) { matvec(m, x, y); },
                      [&m](const double* x, double* y) { matvec_transposed(m, x, y); }};
    return spectral_norm(op, tol, max_iter);
}

NormEstimate spectral_norm(const CscMatrix& m, double tol, int max_iter) {
    LinearOperator op{m.n, [&m](const double* x, double* y) { matvec(m, x, y); },
                      [&m](const double* x, double* y) { matvec_transposed(m, x, y); }};
    return spectral_norm(op, tol, max_iter);
}

CondEstimate estimate_condition(const CscMatrix& a, double tol, int max_iter, int cg_max_iter) {
    if (!a.symmetric && !is_symmetric(a)) {
        throw Error(Errc::not_symmetric, "estimate_condition: matrix is not symmetric");
    }
    const std::size_t n = static_cast<std::size_t>(a.n);
    CondEstimate est;
    if (a.n == 0) return est;

    // power iteration with Rayleigh quotient, optionally on A - shift*I
    auto rayleigh_dominant = [&](double shift, bool& ok) {
        std::vector<double> v = start_vector(a.n);
        std::vector<double> w(n);
        double rayleigh = 0.0;
        ok = false;
        for (int it = 0; it < max_iter; ++it) {
            matvec(a, v.data(), w.data());
            if (shift != 0.0) {
                for (std::size_t i = 0; i < n; ++i) w[i] -= shift * v[i];
            }
            const double r = dot(v, w);
            const double s = norm2(w);
            if (s == 0.0) {
                ok = true;
                return 0.0;
            }
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / s;
            if (it > 0 && std::fabs(r - rayleigh) <= tol * std::fabs(r)) {
                ok = true;
                return r;
            }
            rayleigh = r;
        }
        return rayleigh;
    };

    bool max_ok = false;
    const double lmax = rayleigh_dominant(0.0, max_ok);
    if (lmax <= 0.0) {
        throw Error(Errc::breakdown_on_indefinite,
                    "estimate_condition: dominant eigenvalue is not positive");
    }
    // a clearly negative far end of the spectrum means the matrix is
    // indefinite; inverse iteration would chase the wrong eigenvalue
    bool far_ok = false;
    const double far = lmax + rayleigh_dominant(lmax, far_ok);
    (void)far_ok;
    if (far < -1e-6 * lmax) {
        throw Error(Errc::breakdown_on_indefinite,
                    "estimate_condition: spectrum extends below zero");
    }

    // lambda_min: inverse iteration, each step solved by CG
    std::vector<double> v = start_vector(a.n);
    std::vector<double> w(n);
    std::vector<double> z(n);
    bool min_ok = false;
    double lmin = 0.0;
    const int cg_cap = cg_max_iter > 0
                           ? cg_max_iter
                           : static_cast<int>(std::min<std::int64_t>(5 * a.n, 50000));
    for (int it = 0; it < max_iter; ++it) {
        cg_solve_internal(a, v, z, 1e-10, cg_cap);
        const double s = norm2(z);
        if (s == 0.0) {
            throw Error(Errc::breakdown_on_indefinite, "estimate_condition: inverse iteration broke down");
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = z[i] / s;
        matvec(a, v.data(), w.data());
        const double rayleigh = dot(v, w);
        if (it > 0 && std::fabs(rayleigh - lmin) <= tol * std::fabs(rayleigh)) {
            lmin = rayleigh;
            min_ok = true;
            break;
        }
        lmin = rayleigh;
    }
    if (lmin <= 0.0) {
        throw Error(Errc::breakdown_on_indefinite,
                    "estimate_condition: smallest eigenvalue estimate is not positive");
    }

    est.lambda_max = lmax;
    est.lambda_min = lmin;
    est.kappa = lmax / lmin;
    est.converged = max_ok && min_ok;
    return est;
}

}  // namespace smx
