#pragma once

#include <cstdint>
#include <vector>

#include "smx/dense.hpp"

namespace smx {

using index_t = std::int64_t;

/// One coordinate-format entry, used to build CSC matrices.
struct Triplet {
    index_t row;
    index_t col;
    double value;
};

/// Square sparse matrix in compressed sparse column form.
///
/// Invariants (enforced by validate(), called by every constructor path):
///   col_ptr[0] == 0, nondecreasing, col_ptr[n] == nnz;
///   row indices strictly increasing within each column, all in [0, n).
///
/// The `symmetric` flag asserts structural and numerical symmetry; it is set
/// by the builders after checking, never blindly.
struct CscMatrix {
    index_t n = 0;
    std::vector<index_t> col_ptr;  // length n+1
    std::vector<index_t> row_ind;  // length nnz
    std::vector<double> val;       // length nnz
    bool symmetric = false;

    CscMatrix() = default;
    CscMatrix(index_t n, std::vector<index_t> col_ptr, std::vector<index_t> row_ind,
              std::vector<double> val, bool symmetric = false);

    index_t nnz() const { return static_cast<index_t>(row_ind.size()); }
    double density() const { return n == 0 ? 0.0 : static_cast<double>(nnz()) / (static_cast<double>(n) * n); }

    /// Checks the structural invariants; throws on violation.
    void validate() const;

    /// Value at (i, j); 0 for positions outside the pattern. Binary search.
    double at(index_t i, index_t j) const;

    static CscMatrix identity(index_t n);
};

/// Canonical CSC from coordinate entries. Duplicates are an error; the
/// symmetric flag is set iff the entry set is symmetric.
CscMatrix csc_from_triplets(const std::vector<Triplet>& entries, index_t n);

/// True if for every stored (i,j,v) the entry (j,i) exists with equal value.
bool is_symmetric(const CscMatrix& a);

/// True if both matrices store exactly the same col_ptr and row_ind.
bool pattern_equal(const CscMatrix& a, const CscMatrix& b);

CscMatrix transpose(const CscMatrix& a);

/// y = A * x.
void matvec(const CscMatrix& a, const double* x, double* y);

/// y = A^T * x.
void matvec_transposed(const CscMatrix& a, const double* x, double* y);

/// C = A * B, Gustavson column-at-a-time. Numerically zero results are kept
/// so the output pattern is the structural product pattern.
CscMatrix multiply(const CscMatrix& a, const CscMatrix& b);

/// Pattern-preserving (X + X^T)/2; requires a symmetric pattern.
CscMatrix symmetrize(const CscMatrix& x);

DenseMatrix densify(const CscMatrix& a);

/// Dense -> CSC keeping only exact nonzeros.
CscMatrix sparsify(const DenseMatrix& a);

}  // namespace smx
