#ifndef GSEM_NUMERICS_MATRIX_HPP
#define GSEM_NUMERICS_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gsem::numerics {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Throws DimensionError unless rows * cols == entries.size().
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {entries_.data() + i * cols_, cols_};
    }
    std::span<const double> entries() const noexcept { return entries_; }

    std::vector<double> column(std::size_t j) const;
    std::vector<double> diagonal_entries() const;
    double trace() const;

    Matrix transpose() const;
    /// Entries at the given row and column indices, in the given order.
    Matrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
    Matrix principal_submatrix(std::span<const std::size_t> idx) const { return submatrix(idx, idx); }

    bool is_symmetric(double rel_tol = 1e-12) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace gsem::numerics

#endif  // GSEM_NUMERICS_MATRIX_HPP
