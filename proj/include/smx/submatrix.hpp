#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smx/csc.hpp"
#include "smx/dense.hpp"
#include "smx/scheduler.hpp"

namespace smx {

/// Nonzero row indices R of one column, sorted ascending. `pos_of_col` is the
/// position k with rows[k] == col; the result assembly reads exactly that
/// column of the solved submatrix.
struct IndexSet {
    index_t col = 0;
    std::vector<index_t> rows;
    index_t pos_of_col = 0;
};

/// One unit of work: an index set and the dense principal submatrix it
/// selects, dense[k][l] = A[rows[k]][rows[l]].
struct SubmatrixTask {
    IndexSet index_set;
    DenseMatrix dense;
};

enum class Kernel { lu, eig };

struct RefineConfig {
    double tol = 1e-12;
    int max_iter = 50;
};

/// Which inverse p-th root to compute and how: lu is only valid for p = 1,
/// eig handles any p. `refine` optionally polishes each submatrix solution.
struct MethodConfig {
    int p = 1;
    Kernel kernel = Kernel::lu;
    std::optional<RefineConfig> refine;

    static MethodConfig for_p(int p) {
        return {p, p == 1 ? Kernel::lu : Kernel::eig, std::nullopt};
    }
    void validate() const;
};

/// Per-run record: phase timings from the scheduler plus method metadata.
/// `arrowhead_warning` marks runs where some submatrix exceeded half the
/// matrix dimension (the method cannot pay off on such columns).
struct RunReport {
    index_t n = 0;
    index_t nnz = 0;
    int p = 1;
    int workers = 1;
    std::string strategy;
    TimingReport timing;
    bool arrowhead_warning = false;
};

/// R = { i : A[i][j] != 0 } straight from the CSC column slice. Throws
/// DiagonalZero when j itself is missing: the assembly step would have no
/// source column.
IndexSet build_index_set(const CscMatrix& a, index_t j);

/// Dense |R| x |R| gather. Each target column is produced by a two-pointer
/// merge of CSC column R[l] against the sorted row list; A is never
/// densified.
DenseMatrix extract_submatrix(const CscMatrix& a, const IndexSet& r);

/// Inverse p-th root of the task's dense block (optionally refined), sliced
/// down to the single column the assembly needs.
std::vector<double> solve_submatrix(const SubmatrixTask& task, const MethodConfig& cfg);

/// Stitches per-column value arrays into the result. col_ptr and row_ind are
/// reused from A unchanged; X has exactly A's sparsity pattern.
CscMatrix assemble_result(const CscMatrix& a, const std::vector<std::vector<double>>& columns);

/// The full pipeline: build, solve and place every column through the
/// scheduler's worker pool. Output is bit-identical for any worker count or
/// strategy.
std::pair<CscMatrix, RunReport> submatrix_inverse_proot(const CscMatrix& a,
                                                        const MethodConfig& cfg,
                                                        const SchedulerConfig& sched);

/// ||X^p A - I||_2 via matrix-free power iteration (X applied p times, then
/// A; the product is never formed).
double residual_norm(const CscMatrix& a, const CscMatrix& x, int p);

}  // namespace smx
