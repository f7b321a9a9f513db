#include "smx/csc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smx/errors.hpp"

namespace smx {

CscMatrix::CscMatrix(index_t n, std::vector<index_t> col_ptr, std::vector<index_t> row_ind,
                     std::vector<double> val, bool symmetric)
    : n(n),
      col_ptr(std::move(col_ptr)),
      row_ind(std::move(row_ind)),
      val(std::move(val)),
      symmetric(symmetric) {
    validate();
}

void CscMatrix::validate() const {
    if (n < 0) throw Error(Errc::size_mismatch, "CscMatrix: negative dimension");
    if (col_ptr.size() != static_cast<std::size_t>(n) + 1) {
        throw Error(Errc::size_mismatch, "CscMatrix: col_ptr must have length n+1");
    }
    if (col_ptr.front() != 0 || col_ptr.back() != static_cast<index_t>(row_ind.size())) {
        throw Error(Errc::size_mismatch, "CscMatrix: col_ptr endpoints inconsistent with nnz");
    }
    if (row_ind.size() != val.size()) {
        throw Error(Errc::size_mismatch, "CscMatrix: row_ind/val length mismatch");
    }
    for (index_t j = 0; j < n; ++j) {
        if (col_ptr[j] > col_ptr[j + 1]) {
            throw Error(Errc::size_mismatch, "CscMatrix: col_ptr not nondecreasing");
        }
        for (index_t k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
            const index_t i = row_ind[k];
            if (i < 0 || i >= n) {
                throw Error(Errc::index_out_of_range,
                            "CscMatrix: row index out of range in column " + std::to_string(j));
            }
            if (k > col_ptr[j] && row_ind[k - 1] >= i) {
                throw Error(Errc::size_mismatch,
                            "CscMatrix: row indices not strictly increasing in column " +
                                std::to_string(j));
            }
        }
    }
}

double CscMatrix::at(index_t i, index_t j) const {
    const auto first = row_ind.begin() + col_ptr[j];
    const auto last = row_ind.begin() + col_ptr[j + 1];
    const auto it = std::lower_bound(first, last, i);
    if (it == last || *it != i) return 0.0;
    return val[static_cast<std::size_t>(it - row_ind.begin())];
}

CscMatrix CscMatrix::identity(index_t n) {
    CscMatrix a;
    a.n = n;
    a.col_ptr.resize(static_cast<std::size_t>(n) + 1);
    a.row_ind.resize(static_cast<std::size_t>(n));
    a.val.assign(static_cast<std::size_t>(n), 1.0);
    for (index_t j = 0; j <= n; ++j) a.col_ptr[static_cast<std::size_t>(j)] = j;
    for (index_t j = 0; j < n; ++j) a.row_ind[static_cast<std::size_t>(j)] = j;
    a.symmetric = true;
    return a;
}

CscMatrix csc_from_triplets(const std::vector<Triplet>& entries, index_t n) {
    if (n < 0) throw Error(Errc::size_mismatch, "csc_from_triplets: negative dimension");
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
            throw Error(Errc::index_out_of_range,
                        "csc_from_triplets: entry (" + std::to_string(t.row) + "," +
                            std::to_string(t.col) + ") out of range for n=" + std::to_string(n));
        }
    }

    // counting sort by column, then sort each column slice by row
    CscMatrix a;
    a.n = n;
    a.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Triplet& t : entries) ++a.col_ptr[static_cast<std::size_t>(t.col) + 1];
    for (index_t j = 0; j < n; ++j) {
        a.col_ptr[static_cast<std::size_t>(j) + 1] += a.col_ptr[static_cast<std::size_t>(j)];
    }
    a.row_ind.resize(entries.size());
    a.val.resize(entries.size());
    std::vector<index_t> next(a.col_ptr.begin(), a.col_ptr.end() - 1);
    for (const Triplet& t : entries) {
        const index_t k = next[static_cast<std::size_t>(t.col)]++;
        a.row_ind[static_cast<std::size_t>(k)] = t.row;
        a.val[static_cast<std::size_t>(k)] = t.value;
    }
    for (index_t j = 0; j < n; ++j) {
        const index_t lo = a.col_ptr[j], hi = a.col_ptr[j + 1];
        std::vector<index_t> order(static_cast<std::size_t>(hi - lo));
        for (index_t k = 0; k < hi - lo; ++k) order[static_cast<std::size_t>(k)] = lo + k;
        std::sort(order.begin(), order.end(),
                  [&a](index_t x, index_t y) { return a.row_ind[x] < a.row_ind[y]; });
        std::vector<index_t> rows(order.size());
        std::vector<double> vals(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            rows[k] = a.row_ind[static_cast<std::size_t>(order[k])];
            vals[k] = a.val[static_cast<std::size_t>(order[k])];
        }
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (k > 0 && rows[k] == rows[k - 1]) {
                throw Error(Errc::duplicate_entry,
                            "csc_from_triplets: duplicate entry (" + std::to_string(rows[k]) +
                                "," + std::to_string(j) + ")");
            }
            a.row_ind[static_cast<std::size_t>(lo) + k] = rows[k];
            a.val[static_cast<std::size_t>(lo) + k] = vals[k];
        }
    }
    a.validate();
    a.symmetric = is_symmetric(a);
    return a;
}

bool is_symmetric(const CscMatrix& a) {
    const CscMatrix t = transpose(a);
    return t.row_ind == a.row_ind && t.col_ptr == a.col_ptr && t.val == a.val;
}

bool pattern_equal(const CscMatrix& a, const CscMatrix& b) {
    return a.n == b.n && a.col_ptr == b.col_ptr && a.row_ind == b.row_ind;
}

CscMatrix transpose(const CscMatrix& a) {
    CscMatrix t;
    t.n = a.n;
    t.col_ptr.assign(static_cast<std::size_t>(a.n) + 1, 0);
    for (index_t i : a.row_ind) ++t.col_ptr[static_cast<std::size_t>(i) + 1];
    for (index_t j = 0; j < a.n; ++j) {
        t.col_ptr[static_cast<std::size_t>(j) + 1] += t.col_ptr[static_cast<std::size_t>(j)];
    }
    t.row_ind.resize(a.row_ind.size());
    t.val.resize(a.val.size());
    std::vector<index_t> next(t.col_ptr.begin(), t.col_ptr.end() - 1);
    for (index_t j = 0; j < a.n; ++j) {
        for (index_t k = a.col_ptr[j]; k < a.col_ptr[j + 1]; ++k) {
            const index_t i = a.row_ind[static_cast<std::size_t>(k)];
            const index_t pos = next[static_cast<std::size_t>(i)]++;
            t.row_ind[static_cast<std::size_t>(pos)] = j;
            t.val[static_cast<std::size_t>(pos)] = a.val[static_cast<std::size_t>(k)];
        }
    }
    // column slices are filled in increasing j, so rows are already sorted
    t.symmetric = a.symmetric;
    return t;
}

void matvec(const CscMatrix& a, const double* x, double* y) {
    for (index_t i = 0; i < a.n; ++i) y[i] = 0.0;
    for (index_t j = 0; j < a.n; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        for (index_t k = a.col_ptr[j]; k < a.col_ptr[j + 1]; ++k) {
            y[a.row_ind[static_cast<std::size_t>(k)]] += a.val[static_cast<std::size_t>(k)] * xj;
        }
    }
}

void matvec_transposed(const CscMatrix& a, const double* x, double* y) {
    for (index_t j = 0; j < a.n; ++j) {
        double s = 0.0;
        for (index_t k = a.col_ptr[j]; k < a.col_ptr[j + 1]; ++k) {
            s += a.val[static_cast<std::size_t>(k)] * x[a.row_ind[static_cast<std::size_t>(k)]];
        }
        y[j] = s;
    }
}

CscMatrix multiply(const CscMatrix& a, const CscMatrix& b) {
    if (a.n != b.n) throw Error(Errc::size_mismatch, "multiply: dimension mismatch");
    const index_t n = a.n;
    CscMatrix c;
    c.n = n;
    c.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);

    std::vector<double> work(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> mark(static_cast<std::size_t>(n), false);
    std::vector<index_t> touched;
    for (index_t j = 0; j < n; ++j) {
        touched.clear();
        for (index_t kb = b.col_ptr[j]; kb < b.col_ptr[j + 1]; ++kb) {
            const index_t k = b.row_ind[static_cast<std::size_t>(kb)];
            const double bkj = b.val[static_cast<std::size_t>(kb)];
            for (index_t ka = a.col_ptr[k]; ka < a.col_ptr[k + 1]; ++ka) {
                const index_t i = a.row_ind[static_cast<std::size_t>(ka)];
                if (!mark[static_cast<std::size_t>(i)]) {
                    mark[static_cast<std::size_t>(i)] = true;
                    touched.push_back(i);
                }
                work[static_cast<std::size_t>(i)] += a.val[static_cast<std::size_t>(ka)] * bkj;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (index_t i : touched) {
            c.row_ind.push_back(i);
            c.val.push_back(work[static_cast<std::size_t>(i)]);
            work[static_cast<std::size_t>(i)] = 0.0;
            mark[static_cast<std::size_t>(i)] = false;
        }
        c.col_ptr[static_cast<std::size_t>(j) + 1] = static_cast<index_t>(c.row_ind.size());
    }
    return c;
}

CscMatrix symmetrize(const CscMatrix& x) {
    const CscMatrix t = transpose(x);
    if (!pattern_equal(x, t)) {
        throw Error(Errc::not_symmetric, "symmetrize: pattern is not symmetric");
    }
    CscMatrix s = x;
    for (std::size_t k = 0; k < s.val.size(); ++k) s.val[k] = 0.5 * (x.val[k] + t.val[k]);
    s.symmetric = true;
    return s;
}

DenseMatrix densify(const CscMatrix& a) {
    DenseMatrix d(a.n);
    for (index_t j = 0; j < a.n; ++j) {
        for (index_t k = a.col_ptr[j]; k < a.col_ptr[j + 1]; ++k) {
            d(a.row_ind[static_cast<std::size_t>(k)], j) = a.val[static_cast<std::size_t>(k)];
        }
    }
    return d;
}

CscMatrix sparsify(const DenseMatrix& d) {
    const index_t n = d.dim();
    CscMatrix a;
    a.n = n;
    a.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (index_t j = 0; j < n; ++j) {
        for (index_t i = 0; i < n; ++i) {
            if (d(i, j) != 0.0) {
                a.row_ind.push_back(i);
                a.val.push_back(d(i, j));
            }
        }
        a.col_ptr[static_cast<std::size_t>(j) + 1] = static_cast<index_t>(a.row_ind.size());
    }
    a.symmetric = is_symmetric(a);
    return a;
}

}  // namespace smx
