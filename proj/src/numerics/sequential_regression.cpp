#include <gsem/numerics/sequential_regression.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <gsem/error.hpp>
#include <gsem/numerics/statistics.hpp>
#include <gsem/numerics/summation.hpp>

namespace gsem::numerics {

namespace {

// A residual shorter than this fraction of its centered column is treated as
// zero: below it the projection error of the orthogonalization dominates.
constexpr double kRankTolerance = 1e-13;

double norm(const std::vector<double>& v) {
    return std::sqrt(compensated_dot(v, v));
}

}  // namespace

SequentialRegression::SequentialRegression(const Dataset& data)
    : samples_(data.samples()), position_(data.variables(), kUnselected) {
    const std::size_t n = data.samples();
    const std::size_t p = data.variables();
    residuals_.reserve(p);
    column_norms_.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> col = data.column(j);
        const double mean = compensated_sum(col) / static_cast<double>(n);
        for (double& x : col) x -= mean;
        column_norms_.push_back(norm(col));
        residuals_.push_back(std::move(col));
    }
}

std::vector<double> SequentialRegression::residual_variances(std::span<const std::size_t> candidates) const {
    const std::size_t k = selected_.size();
    if (samples_ <= k + 1)
        throw InsufficientSamplesError("regression on " + std::to_string(k) + " variables needs more than " +
                                       std::to_string(k + 1) + " samples, got " + std::to_string(samples_));
    const double df = static_cast<double>(samples_ - k - 1);
    std::vector<double> out;
    out.reserve(candidates.size());
    for (std::size_t c : candidates) {
        if (is_selected(c)) throw PreconditionError("variable " + std::to_string(c) + " is already selected");
        const auto& r = residuals_.at(c);
        out.push_back(compensated_dot(r, r) / df);
    }
    return out;
}

void SequentialRegression::select(std::size_t j) {
    if (is_selected(j)) throw PreconditionError("variable " + std::to_string(j) + " is already selected");
    const std::size_t p = variables();
    const double length = norm(residuals_[j]);
    if (!(length > kRankTolerance * column_norms_[j]) || length == 0.0)
        throw DegenerateDesignError("variable " + std::to_string(j) +
                                    " is numerically a linear combination of the selected variables");

    position_[j] = selected_.size();
    selected_.push_back(j);
    diagonal_.push_back(length);

    std::vector<double> q(residuals_[j].size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = residuals_[j][i] / length;

    std::vector<double> coef(p, 0.0);
    for (std::size_t c = 0; c < p; ++c) {
        if (is_selected(c)) continue;
        auto& r = residuals_[c];
        const double a = compensated_dot(q, r);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= a * q[i];
        coef[c] = a;
    }
    coefficients_.push_back(std::move(coef));
    basis_.push_back(std::move(q));
}

Matrix SequentialRegression::r_factor() const {
    const std::size_t k = selected_.size();
    Matrix r(k, k);
    for (std::size_t col = 0; col < k; ++col) {
        const std::size_t node = selected_[col];
        for (std::size_t row = 0; row < col; ++row) r(row, col) = coefficients_[row][node];
        r(col, col) = diagonal_[col];
    }
    return r;
}

Matrix ordered_partial_correlations(const Matrix& r) {
    if (r.rows() != r.cols())
        throw DimensionError("R factor must be square, got " + std::to_string(r.rows()) + "x" +
                             std::to_string(r.cols()));
    const std::size_t k = r.rows();
    for (std::size_t i = 0; i < k; ++i)
        if (!(r(i, i) != 0.0) || !std::isfinite(r(i, i)))
            throw DegenerateDesignError("R factor has a zero or non-finite diagonal at position " +
                                        std::to_string(i));

    // Row j of U = R^{-1}; for the leading (m+1)-block the precision matrix is
    // U_m U_m^T, so rho(m, j) only needs U_jm and the partial row norm of U_j.
    Matrix rho(k, k);
    std::vector<double> u(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::fill(u.begin(), u.end(), 0.0);
        u[j] = 1.0 / r(j, j);
        CompensatedSum row_norm2;
        row_norm2.add(u[j] * u[j]);
        for (std::size_t m = j + 1; m < k; ++m) {
            CompensatedSum acc;
            for (std::size_t i = j; i < m; ++i) acc.add(u[i] * r(i, m));
            u[m] = -acc.value() / r(m, m);
            row_norm2.add(u[m] * u[m]);
            const double sign = r(m, m) > 0.0 ? 1.0 : -1.0;
            const double value = -sign * u[m] / std::sqrt(row_norm2.value());
            if (!std::isfinite(value))
                throw DegenerateDesignError("partial correlation at positions (" + std::to_string(m) + ", " +
                                            std::to_string(j) + ") is not finite");
            rho(m, j) = std::clamp(value, -kCorrelationClamp, kCorrelationClamp);
        }
    }
    return rho;
}

}  // namespace gsem::numerics
