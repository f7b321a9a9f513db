#pragma once

#include <cstdint>
#include <vector>

namespace smx {

/// Small square dense matrix, column-major. This is the unit a submatrix
/// kernel operates on; entries are required to be finite on construction.
class DenseMatrix {
  public:
    DenseMatrix() = default;

    /// m x m matrix of zeros.
    explicit DenseMatrix(std::int64_t m);

    /// Takes ownership of column-major data of length m*m; rejects NaN/Inf.
    DenseMatrix(std::int64_t m, std::vector<double> data);

    static DenseMatrix identity(std::int64_t m);

    std::int64_t dim() const { return m_; }

    double& operator()(std::int64_t i, std::int64_t j) { return data_[i + j * m_]; }
    double operator()(std::int64_t i, std::int64_t j) const { return data_[i + j * m_]; }

    double* col(std::int64_t j) { return data_.data() + j * m_; }
    const double* col(std::int64_t j) const { return data_.data() + j * m_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool all_finite() const;

  private:
    std::int64_t m_ = 0;
    std::vector<double> data_;
};

/// C = A * B (both m x m).
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// y = A * x.
void matvec(const DenseMatrix& a, const double* x, double* y);

/// y = A^T * x.
void matvec_transposed(const DenseMatrix& a, const double* x, double* y);

DenseMatrix transpose(const DenseMatrix& a);

/// max_ij |A_ij|.
double max_abs(const DenseMatrix& a);

/// Largest |A_ij - A_ji|; 0 for an exactly symmetric matrix.
double symmetry_defect(const DenseMatrix& a);

}  // namespace smx
