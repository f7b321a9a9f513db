#include "smx/submatrix.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <utility>

#include "smx/errors.hpp"
#include "smx/kernels.hpp"
#include "smx/norms.hpp"

namespace smx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::static_contiguous: return "static";
        case Strategy::shuffled: return "shuffled";
        case Strategy::dynamic: return "dynamic";
    }
    return "?";
}

}  // namespace

void MethodConfig::validate() const {
    if (p < 1) throw Error(Errc::infeasible_spec, "method: p must be >= 1");
    if (kernel == Kernel::lu && p != 1) {
        throw Error(Errc::infeasible_spec, "method: the lu kernel only computes p = 1");
    }
    if (refine && (refine->tol <= 0.0 || refine->max_iter < 1)) {
        throw Error(Errc::infeasible_spec, "method: invalid refinement parameters");
    }
}

IndexSet build_index_set(const CscMatrix& a, index_t j) {
    if (!a.symmetric) {
        throw Error(Errc::not_symmetric, "build_index_set: input must be symmetric");
    }
    if (j < 0 || j >= a.n) {
        throw Error(Errc::index_out_of_range, "build_index_set: column out of range", j);
    }
    IndexSet r;
    r.col = j;
    const index_t lo = a.col_ptr[j], hi = a.col_ptr[j + 1];
    r.rows.assign(a.row_ind.begin() + lo, a.row_ind.begin() + hi);
    const auto it = std::lower_bound(r.rows.begin(), r.rows.end(), j);
    if (it == r.rows.end() || *it != j) {
        throw Error(Errc::diagonal_zero,
                    "build_index_set: structural zero on the diagonal of column " +
                        std::to_string(j),
                    j);
    }
    r.pos_of_col = static_cast<index_t>(it - r.rows.begin());
    return r;
}

DenseMatrix extract_submatrix(const CscMatrix& a, const IndexSet& r) {
    const index_t m = static_cast<index_t>(r.rows.size());
    DenseMatrix d(m);
    // column l of the submatrix: merge CSC column rows[l] against the sorted
    // row list; both sides are strictly increasing
    for (index_t l = 0; l < m; ++l) {
        const index_t aj = r.rows[static_cast<std::size_t>(l)];
        index_t k = a.col_ptr[aj];
        const index_t k_end = a.col_ptr[aj + 1];
        double* dst = d.col(l);
        index_t t = 0;
        while (k < k_end && t < m) {
            const index_t row = a.row_ind[static_cast<std::size_t>(k)];
            const index_t want = r.rows[static_cast<std::size_t>(t)];
            if (row < want) {
                ++k;
            } else if (row > want) {
                ++t;
            } else {
                dst[t] = a.val[static_cast<std::size_t>(k)];
                ++k;
                ++t;
            }
        }
    }
    return d;
}

std::vector<double> solve_submatrix(const SubmatrixTask& task, const MethodConfig& cfg) {
    cfg.validate();
    const index_t m = task.dense.dim();
    DenseMatrix x;
    try {
        x = cfg.kernel == Kernel::lu ? inverse_proot_dense(task.dense, 1)
                                     : inverse_proot_eig(task.dense, cfg.p);
        if (cfg.refine) {
            x = refine_inverse_proot(task.dense, x, cfg.p, cfg.refine->tol, cfg.refine->max_iter)
                    .x;
        }
    } catch (const Error& err) {
        if (err.code == Errc::not_positive_definite || err.code == Errc::singular_matrix) {
            throw Error(Errc::not_positive_definite,
                        "column " + std::to_string(task.index_set.col) +
                            ": submatrix is not positive definite",
                        task.index_set.col);
        }
        throw;
    }

    std::vector<double> column(static_cast<std::size_t>(m));
    const double* src = x.col(task.index_set.pos_of_col);
    std::copy(src, src + m, column.begin());
    return column;
}

CscMatrix assemble_result(const CscMatrix& a, const std::vector<std::vector<double>>& columns) {
    if (columns.size() != static_cast<std::size_t>(a.n)) {
        throw Error(Errc::length_mismatch, "assemble_result: one value array per column required");
    }
    CscMatrix x;
    x.n = a.n;
    x.col_ptr = a.col_ptr;  // reused unchanged
    x.row_ind = a.row_ind;
    x.val.resize(a.val.size());
    for (index_t j = 0; j < a.n; ++j) {
        const auto& col = columns[static_cast<std::size_t>(j)];
        const index_t lo = a.col_ptr[j];
        const index_t len = a.col_ptr[j + 1] - lo;
        if (static_cast<index_t>(col.size()) != len) {
            throw Error(Errc::length_mismatch,
                        "assemble_result: column " + std::to_string(j) + " has " +
                            std::to_string(col.size()) + " values, expected " + std::to_string(len),
                        j);
        }
        std::copy(col.begin(), col.end(), x.val.begin() + lo);
    }
    x.symmetric = false;  // the method does not produce symmetric output in general
    return x;
}

std::pair<CscMatrix, RunReport> submatrix_inverse_proot(const CscMatrix& a,
                                                        const MethodConfig& cfg,
                                                        const SchedulerConfig& sched) {
    cfg.validate();
    sched.validate();
    if (!a.symmetric) {
        throw Error(Errc::not_symmetric, "submatrix method: input must be symmetric");
    }

    // check every diagonal up front so the error can name all offending columns
    std::vector<index_t> missing;
    for (index_t j = 0; j < a.n; ++j) {
        const auto first = a.row_ind.begin() + a.col_ptr[j];
        const auto last = a.row_ind.begin() + a.col_ptr[j + 1];
        const auto it = std::lower_bound(first, last, j);
        if (it == last || *it != j) missing.push_back(j);
    }
    if (!missing.empty()) {
        std::string msg = "submatrix method: structural zero diagonal in column(s)";
        for (index_t j : missing) msg += " " + std::to_string(j);
        throw Error(Errc::diagonal_zero, msg, missing);
    }

    CscMatrix x;
    x.n = a.n;
    x.col_ptr = a.col_ptr;
    x.row_ind = a.row_ind;
    x.val.resize(a.val.size());
    x.symmetric = false;

    auto task = [&](index_t j) -> TaskSample {
        TaskSample sample;
        auto t0 = Clock::now();
        SubmatrixTask work;
        work.index_set = build_index_set(a, j);
        work.dense = extract_submatrix(a, work.index_set);
        sample.dim = work.dense.dim();
        sample.build = seconds_since(t0);

        t0 = Clock::now();
        const std::vector<double> column = solve_submatrix(work, cfg);
        sample.solve = seconds_since(t0);

        // disjoint val slice per column; no synchronization needed
        t0 = Clock::now();
        std::copy(column.begin(), column.end(), x.val.begin() + a.col_ptr[j]);
        sample.assemble = seconds_since(t0);
        return sample;
    };

    RunReport report;
    report.timing = run_parallel(a.n, sched, task);
    report.n = a.n;
    report.nnz = a.nnz();
    report.p = cfg.p;
    report.workers = sched.workers;
    report.strategy = strategy_name(sched.strategy);
    report.arrowhead_warning = 2 * report.timing.max_submatrix_dim > a.n;
    return {std::move(x), report};
}

double residual_norm(const CscMatrix& a, const CscMatrix& x, int p) {
    if (a.n != x.n) throw Error(Errc::size_mismatch, "residual_norm: size mismatch");
    const index_t n = a.n;
    std::vector<double> tmp(static_cast<std::size_t>(n));
    LinearOperator op{
        n,
        [&](const double* in, double* out) {
            matvec(a, in, out);
            for (int q = 0; q < p; ++q) {
                std::copy(out, out + n, tmp.begin());
                matvec(x, tmp.data(), out);
            }
            for (index_t i = 0; i < n; ++i) out[i] -= in[i];
        },
        [&](const double* in, double* out) {
            std::copy(in, in + n, out);
            for (int q = 0; q < p; ++q) {
                std::copy(out, out + n, tmp.begin());
                matvec_transposed(x, tmp.data(), out);
            }
            std::copy(out, out + n, tmp.begin());
            matvec_transposed(a, tmp.data(), out);
            for (index_t i = 0; i < n; ++i) out[i] -= in[i];
        }};
    return spectral_norm(op, 1e-9, 2000).value;
}

}  // namespace smx
