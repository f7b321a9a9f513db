#include "smx/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smx/errors.hpp"
#include "smx/norms.hpp"

namespace smx {

namespace {

/// ||X^p A - I||_2 without forming the product: matrix-free power iteration.
double dense_root_residual(const DenseMatrix& a, const DenseMatrix& x, int p) {
    const std::int64_t m = a.dim();
    std::vector<double> tmp(static_cast<std::size_t>(m));
    LinearOperator op{
        m,
        [&](const double* in, double* out) {
            matvec(a, in, out);
            std::vector<double>& t = tmp;
            for (int q = 0; q < p; ++q) {
                std::copy(out, out + m, t.begin());
                matvec(x, t.data(), out);
            }
            for (std::int64_t i = 0; i < m; ++i) out[i] -= in[i];
        },
        [&](const double* in, double* out) {
            std::vector<double>& t = tmp;
            std::copy(in, in + m, out);
            for (int q = 0; q < p; ++q) {
                std::copy(out, out + m, t.begin());
                matvec_transposed(x, t.data(), out);
            }
            std::copy(out, out + m, t.begin());
            matvec_transposed(a, t.data(), out);
            for (std::int64_t i = 0; i < m; ++i) out[i] -= in[i];
        }};
    return spectral_norm(op, 1e-10, 2000).value;
}

}  // namespace

LuFactors lu_factor(const DenseMatrix& d) {
    const std::int64_t m = d.dim();
    LuFactors f;
    f.m = m;
    f.lu = d;
    f.perm.resize(static_cast<std::size_t>(m));
    std::iota(f.perm.begin(), f.perm.end(), 0);

    const double pivot_floor = 1e-14 * max_abs(d);
    DenseMatrix& a = f.lu;
    for (std::int64_t k = 0; k < m; ++k) {
        // partial pivoting: largest remaining entry in column k
        std::int64_t piv = k;
        double best = std::fabs(a(k, k));
        for (std::int64_t i = k + 1; i < m; ++i) {
            const double v = std::fabs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= pivot_floor) {
            throw Error(Errc::singular_matrix,
                        "lu_factor: pivot " + std::to_string(k) + " below tolerance", k);
        }
        if (piv != k) {
            for (std::int64_t j = 0; j < m; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(f.perm[static_cast<std::size_t>(k)], f.perm[static_cast<std::size_t>(piv)]);
        }
        const double inv_pivot = 1.0 / a(k, k);
        double* ck = a.col(k);
        for (std::int64_t i = k + 1; i < m; ++i) ck[i] *= inv_pivot;
        for (std::int64_t j = k + 1; j < m; ++j) {
            double* cj = a.col(j);
            const double ukj = cj[k];
            if (ukj == 0.0) continue;
            for (std::int64_t i = k + 1; i < m; ++i) cj[i] -= ck[i] * ukj;
        }
    }
    return f;
}

void lu_solve(const LuFactors& f, const double* b, double* x) {
    const std::int64_t m = f.m;
    const DenseMatrix& a = f.lu;
    // forward: L y = P b
    for (std::int64_t k = 0; k < m; ++k) x[k] = b[f.perm[static_cast<std::size_t>(k)]];
    for (std::int64_t k = 0; k < m; ++k) {
        const double yk = x[k];
        if (yk == 0.0) continue;
        const double* ck = a.col(k);
        for (std::int64_t i = k + 1; i < m; ++i) x[i] -= ck[i] * yk;
    }
    // back: U x = y
    for (std::int64_t k = m - 1; k >= 0; --k) {
        const double* ck = a.col(k);
        x[k] /= ck[k];
        const double xk = x[k];
        if (xk == 0.0) continue;
        for (std::int64_t i = 0; i < k; ++i) x[i] -= ck[i] * xk;
    }
}

DenseMatrix lu_invert(const LuFactors& f) {
    const std::int64_t m = f.m;
    const DenseMatrix& a = f.lu;
    DenseMatrix inv(m);
    std::vector<double> y(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        // forward solve with rhs P e_j; y is zero until the hit row
        std::int64_t start = -1;
        for (std::int64_t k = 0; k < m; ++k) {
            if (f.perm[static_cast<std::size_t>(k)] == j) {
                start = k;
                break;
            }
        }
        std::fill(y.begin(), y.end(), 0.0);
        y[static_cast<std::size_t>(start)] = 1.0;
        for (std::int64_t k = start; k < m; ++k) {
            const double yk = y[static_cast<std::size_t>(k)];
            if (yk == 0.0) continue;
            const double* ck = a.col(k);
            for (std::int64_t i = k + 1; i < m; ++i) y[static_cast<std::size_t>(i)] -= ck[i] * yk;
        }
        double* xj = inv.col(j);
        for (std::int64_t i = 0; i < m; ++i) xj[i] = y[static_cast<std::size_t>(i)];
        for (std::int64_t k = m - 1; k >= 0; --k) {
            const double* ck = a.col(k);
            xj[k] /= ck[k];
            const double xk = xj[k];
            if (xk == 0.0) continue;
            for (std::int64_t i = 0; i < k; ++i) xj[i] -= ck[i] * xk;
        }
    }
    return inv;
}

EigenDecomposition sym_eig(const DenseMatrix& d, double tol) {
    const std::int64_t m = d.dim();
    const double scale = max_abs(d);
    if (symmetry_defect(d) > 1e-12 * std::max(scale, 1.0)) {
        throw Error(Errc::not_symmetric, "sym_eig: input is not symmetric");
    }

    DenseMatrix a = d;
    DenseMatrix v = DenseMatrix::identity(m);

    double fro = 0.0;
    for (double e : a.data()) fro += e * e;
    fro = std::sqrt(fro);
    const double off_target = tol * fro;

    constexpr int kMaxSweeps = 50;
    bool converged = fro == 0.0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        double off_max = 0.0;
        for (std::int64_t p = 0; p < m - 1; ++p) {
            for (std::int64_t q = p + 1; q < m; ++q) {
                const double apq = a(p, q);
                off_max = std::max(off_max, std::fabs(apq));
                if (std::fabs(apq) <= off_target) continue;
                // stable 2x2 rotation (Golub & Van Loan)
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                double* cp = a.col(p);
                double* cq = a.col(q);
                for (std::int64_t i = 0; i < m; ++i) {
                    const double aip = cp[i];
                    const double aiq = cq[i];
                    cp[i] = c * aip - s * aiq;
                    cq[i] = s * aip + c * aiq;
                }
                for (std::int64_t j = 0; j < m; ++j) {
                    const double apj = a(p, j);
                    const double aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                double* vp = v.col(p);
                double* vq = v.col(q);
                for (std::int64_t i = 0; i < m; ++i) {
                    const double vip = vp[i];
                    const double viq = vq[i];
                    vp[i] = c * vip - s * viq;
                    vq[i] = s * vip + c * viq;
                }
            }
        }
        if (off_max <= off_target) converged = true;
    }
    if (!converged) {
        throw Error(Errc::no_convergence, "sym_eig: Jacobi sweeps did not converge");
    }

    EigenDecomposition e;
    e.m = m;
    e.eigenvalues.resize(static_cast<std::size_t>(m));
    std::vector<std::int64_t> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](std::int64_t x, std::int64_t y) { return a(x, x) < a(y, y); });
    e.eigenvectors = DenseMatrix(m);
    for (std::int64_t j = 0; j < m; ++j) {
        const std::int64_t src = order[static_cast<std::size_t>(j)];
        e.eigenvalues[static_cast<std::size_t>(j)] = a(src, src);
        const double* vs = v.col(src);
        double* vd = e.eigenvectors.col(j);
        std::copy(vs, vs + m, vd);
    }
    return e;
}

DenseMatrix inverse_proot_dense(const DenseMatrix& d, int p) {
    if (p < 1) throw Error(Errc::infeasible_spec, "inverse_proot_dense: p must be >= 1");
    if (p == 1) {
        try {
            return lu_invert(lu_factor(d));
        } catch (const Error& err) {
            if (err.code == Errc::singular_matrix) {
                throw Error(Errc::not_positive_definite,
                            "inverse_proot_dense: singular input", err.index);
            }
            throw;
        }
    }
    return inverse_proot_eig(d, p);
}

DenseMatrix inverse_proot_eig(const DenseMatrix& d, int p) {
    if (p < 1) throw Error(Errc::infeasible_spec, "inverse_proot_eig: p must be >= 1");
    const EigenDecomposition e = sym_eig(d);
    const double lam_max = e.eigenvalues.back();
    if (lam_max <= 0.0 || e.eigenvalues.front() <= 1e-12 * lam_max) {
        throw Error(Errc::not_positive_definite,
                    "inverse_proot_eig: eigenvalue " + std::to_string(e.eigenvalues.front()) +
                        " is not acceptably positive");
    }

    const std::int64_t m = d.dim();
    DenseMatrix x(m);
    std::vector<double> scaled(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k < m; ++k) {
        scaled[static_cast<std::size_t>(k)] =
            std::pow(e.eigenvalues[static_cast<std::size_t>(k)], -1.0 / static_cast<double>(p));
    }
    // X = V diag(lambda^{-1/p}) V^T, filled symmetrically
    for (std::int64_t j = 0; j < m; ++j) {
        for (std::int64_t i = 0; i <= j; ++i) {
            double s = 0.0;
            for (std::int64_t k = 0; k < m; ++k) {
                s += e.eigenvectors(i, k) * scaled[static_cast<std::size_t>(k)] *
                     e.eigenvectors(j, k);
            }
            x(i, j) = s;
            x(j, i) = s;
        }
    }
    return x;
}

RefineResult refine_inverse_proot(const DenseMatrix& a, const DenseMatrix& x0, int p, double tol,
                                  int max_iter) {
    if (p < 1) throw Error(Errc::infeasible_spec, "refine_inverse_proot: p must be >= 1");
    const std::int64_t m = a.dim();
    if (x0.dim() != m) throw Error(Errc::size_mismatch, "refine_inverse_proot: size mismatch");

    RefineResult best{x0, 0, dense_root_residual(a, x0, p)};
    if (best.residual < tol) return best;

    DenseMatrix x = x0;
    double prev_residual = best.residual;
    int increases = 0;
    for (int it = 1; it <= max_iter; ++it) {
        // X <- (1/p) X ((p+1) I - A X^p)
        DenseMatrix xp = x;
        for (int q = 1; q < p; ++q) xp = multiply(xp, x);
        DenseMatrix axp = multiply(a, xp);
        for (double& e : axp.data()) e = -e;
        for (std::int64_t i = 0; i < m; ++i) axp(i, i) += static_cast<double>(p) + 1.0;
        x = multiply(x, axp);
        const double inv_p = 1.0 / static_cast<double>(p);
        for (double& e : x.data()) e *= inv_p;

        const double res = dense_root_residual(a, x, p);
        if (res < best.residual) {
            best.x = x;
            best.residual = res;
            best.iterations = it;
        }
        if (res < tol) {
            best.iterations = it;
            return best;
        }
        increases = res > prev_residual ? increases + 1 : 0;
        if (increases >= 2) {
            throw Error(Errc::diverged,
                        "refine_inverse_proot: residual increased twice in a row");
        }
        prev_residual = res;
    }
    throw Error(Errc::no_convergence, "refine_inverse_proot: max_iter reached");
}

}  // namespace smx
