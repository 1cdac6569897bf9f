#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace dce {

/// Minimal dense row-major matrix.  The mode bases handled here stay at desk
/// scale (K up to a few hundred), so no sparsity machinery.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix zero(std::size_t n) { return Matrix(n, n); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    /// max |a_ij|
    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::fabs(v));
        return m;
    }

    /// max |a_ij + a_ji|, the antisymmetry residual
    double antisymmetry_residual() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m = std::max(m, std::fabs((*this)(i, j) + (*this)(j, i)));
        return m;
    }

    /// max |a_ij - a_ji|, the symmetry residual
    double symmetry_residual() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

} // namespace dce
