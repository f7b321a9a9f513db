#include "smx/ilu0.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "smx/errors.hpp"

namespace smx {

Ilu0Factors ilu0(const CscMatrix& a) {
    const index_t n = a.n;

    // row-major working copy: column j of A^T is row j of A
    const CscMatrix rows = transpose(a);
    std::vector<index_t> row_ptr = rows.col_ptr;
    std::vector<index_t> cols = rows.row_ind;
    std::vector<double> val = rows.val;

    std::vector<index_t> diag_pos(static_cast<std::size_t>(n), -1);
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (cols[static_cast<std::size_t>(k)] == i) {
                diag_pos[static_cast<std::size_t>(i)] = k;
                break;
            }
        }
        if (diag_pos[static_cast<std::size_t>(i)] < 0) {
            throw Error(Errc::zero_pivot,
                        "ilu0: structurally zero diagonal at " + std::to_string(i), i);
        }
    }

    // IKJ elimination restricted to the pattern; w maps column -> position
    // within the current row
    std::vector<index_t> w(static_cast<std::size_t>(n), -1);
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            w[static_cast<std::size_t>(cols[static_cast<std::size_t>(k)])] = k;
        }
        for (index_t kk = row_ptr[i]; kk < row_ptr[i + 1]; ++kk) {
            const index_t k = cols[static_cast<std::size_t>(kk)];
            if (k >= i) break;  // columns sorted; only k < i eliminate
            const double ukk = val[static_cast<std::size_t>(diag_pos[static_cast<std::size_t>(k)])];
            if (ukk == 0.0 || !std::isfinite(ukk)) {
                throw Error(Errc::zero_pivot, "ilu0: zero pivot at " + std::to_string(k), k);
            }
            const double lik = val[static_cast<std::size_t>(kk)] / ukk;
            val[static_cast<std::size_t>(kk)] = lik;
            for (index_t jj = row_ptr[k]; jj < row_ptr[k + 1]; ++jj) {
                const index_t j = cols[static_cast<std::size_t>(jj)];
                if (j <= k) continue;
                const index_t pos = w[static_cast<std::size_t>(j)];
                if (pos >= 0) val[static_cast<std::size_t>(pos)] -= lik * val[static_cast<std::size_t>(jj)];
            }
        }
        const double uii = val[static_cast<std::size_t>(diag_pos[static_cast<std::size_t>(i)])];
        if (uii == 0.0 || !std::isfinite(uii)) {
            throw Error(Errc::zero_pivot, "ilu0: zero pivot at " + std::to_string(i), i);
        }
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            w[static_cast<std::size_t>(cols[static_cast<std::size_t>(k)])] = -1;
        }
    }

    std::vector<Triplet> l_trip, u_trip;
    for (index_t i = 0; i < n; ++i) {
        l_trip.push_back({i, i, 1.0});
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            const index_t j = cols[static_cast<std::size_t>(k)];
            const double v = val[static_cast<std::size_t>(k)];
            if (j < i) {
                l_trip.push_back({i, j, v});
            } else if (j >= i) {
                u_trip.push_back({i, j, v});
            }
        }
    }
    Ilu0Factors f;
    f.l = csc_from_triplets(l_trip, n);
    f.u = csc_from_triplets(u_trip, n);
    return f;
}

void ilu0_apply(const Ilu0Factors& f, const double* r, double* z) {
    const index_t n = f.l.n;
    // forward solve L y = r (unit diagonal)
    for (index_t i = 0; i < n; ++i) z[i] = r[i];
    for (index_t j = 0; j < n; ++j) {
        const double zj = z[j];
        if (zj == 0.0) continue;
        for (index_t k = f.l.col_ptr[j]; k < f.l.col_ptr[j + 1]; ++k) {
            const index_t i = f.l.row_ind[static_cast<std::size_t>(k)];
            if (i > j) z[i] -= f.l.val[static_cast<std::size_t>(k)] * zj;
        }
    }
    // back solve U z = y
    for (index_t j = n - 1; j >= 0; --j) {
        const index_t lo = f.u.col_ptr[j], hi = f.u.col_ptr[j + 1];
        // diagonal is the last entry of an upper-triangular CSC column
        const double ujj = f.u.val[static_cast<std::size_t>(hi - 1)];
        z[j] /= ujj;
        const double zj = z[j];
        if (zj == 0.0) continue;
        for (index_t k = lo; k < hi - 1; ++k) {
            z[f.u.row_ind[static_cast<std::size_t>(k)]] -= f.u.val[static_cast<std::size_t>(k)] * zj;
        }
    }
}

}  // namespace smx
