#ifndef GSEM_NUMERICS_SEQUENTIAL_REGRESSION_HPP
#define GSEM_NUMERICS_SEQUENTIAL_REGRESSION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <gsem/numerics/dataset.hpp>
#include <gsem/numerics/matrix.hpp>

namespace gsem::numerics {

/// Regressions on a growing set of selected columns, maintained by modified
/// Gram-Schmidt on the mean-centered data.
///
/// Every unselected column carries its residual against the columns
/// selected so far, so residual variances are read off directly without
/// forming normal equations. Working on the data rather than on X^T X keeps
/// the error proportional to cond(X) instead of cond(X)^2, which matters for
/// dense models whose variances span many orders of magnitude.
class SequentialRegression {
public:
    explicit SequentialRegression(const Dataset& data);

    std::size_t samples() const noexcept { return samples_; }
    std::size_t variables() const noexcept { return residuals_.size(); }
    const std::vector<std::size_t>& selected() const noexcept { return selected_; }
    bool is_selected(std::size_t j) const { return position_.at(j) != kUnselected; }

    /// ||r_c||^2 / (n - k - 1) for each unselected candidate, k = number selected.
    /// Throws InsufficientSamplesError when n <= k + 1.
    std::vector<double> residual_variances(std::span<const std::size_t> candidates) const;

    /// Appends `j` to the selected set and orthogonalizes the remaining
    /// columns against it. Throws DegenerateDesignError if j is numerically a
    /// linear combination of the selected columns.
    void select(std::size_t j);

    /// Upper-triangular R with X_sel = Q R, columns in selection order.
    Matrix r_factor() const;

private:
    static constexpr std::size_t kUnselected = static_cast<std::size_t>(-1);

    std::size_t samples_;
    std::vector<std::vector<double>> residuals_;
    std::vector<double> column_norms_;
    std::vector<std::vector<double>> basis_;  // orthonormal, selection order
    std::vector<std::size_t> selected_;
    std::vector<std::size_t> position_;
    // coefficients_[s][c] = <q_s, column c> accumulated by the projections
    std::vector<std::vector<double>> coefficients_;
    std::vector<double> diagonal_;
};

/// Partial correlations implied by an upper-triangular factor R of an
/// ordered Gram or covariance matrix (R^T R = G). Entry (m, j), j < m, is
/// rho(v_m, v_j | v_0..v_{m-1} without v_j). Throws DegenerateDesignError on a
/// zero diagonal. Values are clamped like partial_correlation.
Matrix ordered_partial_correlations(const Matrix& r);

}  // namespace gsem::numerics

#endif  // GSEM_NUMERICS_SEQUENTIAL_REGRESSION_HPP
