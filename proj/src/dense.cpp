#include "smx/dense.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

#include "smx/errors.hpp"

namespace smx {

DenseMatrix::DenseMatrix(std::int64_t m) : m_(m), data_(static_cast<std::size_t>(m * m), 0.0) {
    if (m <= 0) throw Error(Errc::size_mismatch, "DenseMatrix: dimension must be positive");
}

DenseMatrix::DenseMatrix(std::int64_t m, std::vector<double> data)
    : m_(m), data_(std::move(data)) {
    if (m <= 0) throw Error(Errc::size_mismatch, "DenseMatrix: dimension must be positive");
    if (data_.size() != static_cast<std::size_t>(m * m)) {
        throw Error(Errc::size_mismatch, "DenseMatrix: data length does not match dimension");
    }
    if (!all_finite()) {
        throw Error(Errc::parse_error, "DenseMatrix: non-finite entry");
    }
}

DenseMatrix DenseMatrix::identity(std::int64_t m) {
    DenseMatrix a(m);
    for (std::int64_t i = 0; i < m; ++i) a(i, i) = 1.0;
    return a;
}

bool DenseMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::int64_t m = a.dim();
    if (b.dim() != m) throw Error(Errc::size_mismatch, "multiply: dimension mismatch");
    DenseMatrix c(m);
    // jki order: every inner update is an axpy over a contiguous column.
    for (std::int64_t j = 0; j < m; ++j) {
        double* cj = c.col(j);
        const double* bj = b.col(j);
        for (std::int64_t k = 0; k < m; ++k) {
            const double bkj = bj[k];
            if (bkj == 0.0) continue;
            const double* ak = a.col(k);
            for (std::int64_t i = 0; i < m; ++i) cj[i] += ak[i] * bkj;
        }
    }
    return c;
}

void matvec(const DenseMatrix& a, const double* x, double* y) {
    const std::int64_t m = a.dim();
    for (std::int64_t i = 0; i < m; ++i) y[i] = 0.0;
    for (std::int64_t j = 0; j < m; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        const double* aj = a.col(j);
        for (std::int64_t i = 0; i < m; ++i) y[i] += aj[i] * xj;
    }
}

void matvec_transposed(const DenseMatrix& a, const double* x, double* y) {
    const std::int64_t m = a.dim();
    for (std::int64_t j = 0; j < m; ++j) {
        const double* aj = a.col(j);
        double s = 0.0;
        for (std::int64_t i = 0; i < m; ++i) s += aj[i] * x[i];
        y[j] = s;
    }
}

DenseMatrix transpose(const DenseMatrix& a) {
    const std::int64_t m = a.dim();
    DenseMatrix t(m);
    for (std::int64_t j = 0; j < m; ++j)
        for (std::int64_t i = 0; i < m; ++i) t(j, i) = a(i, j);
    return t;
}

double max_abs(const DenseMatrix& a) {
    double mx = 0.0;
    for (double v : a.data()) mx = std::max(mx, std::fabs(v));
    return mx;
}

double symmetry_defect(const DenseMatrix& a) {
    const std::int64_t m = a.dim();
    double mx = 0.0;
    for (std::int64_t j = 0; j < m; ++j)
        for (std::int64_t i = j + 1; i < m; ++i) mx = std::max(mx, std::fabs(a(i, j) - a(j, i)));
    return mx;
}

}  // namespace smx
