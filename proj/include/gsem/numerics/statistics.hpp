#ifndef GSEM_NUMERICS_STATISTICS_HPP
#define GSEM_NUMERICS_STATISTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <gsem/numerics/dataset.hpp>
#include <gsem/numerics/matrix.hpp>

namespace gsem::numerics {

/// Covariance of mean-centered columns with denominator n - 1.
/// Throws DimensionError for fewer than two rows.
Matrix sample_covariance(const Dataset& data);

/// Centered cross-product matrix X_c^T X_c (the scatter matrix).
Matrix centered_cross_products(const Dataset& data);

/// Residual variance of column j after least-squares regression on the
/// columns in `given` plus an intercept, with n - |given| - 1 degrees of
/// freedom. The residuals are formed explicitly.
double conditional_variance(const Dataset& data, std::size_t j, std::span<const std::size_t> given);

/// Partial correlation rho(X_j, X_k | X_given) from any covariance matrix.
/// The result is clamped into [-(1 - 1e-12), 1 - 1e-12].
double partial_correlation(const Matrix& cov, std::size_t j, std::size_t k,
                           std::span<const std::size_t> given);

inline constexpr double kCorrelationClamp = 1.0 - 1e-12;

struct IndependenceDecision {
    bool dependent = false;
    double statistic = 0.0;   ///< sqrt(n - s - 3) |atanh r|
    double threshold = 0.0;   ///< two-sided standard normal critical value
    bool infinite_statistic = false;
};

/// Fisher z test of a (partial) correlation r estimated from n samples with a
/// conditioning set of size s.
IndependenceDecision fisher_z_test(double r, std::size_t n, std::size_t s, double alpha);

/// z with P(|Z| > z) = alpha for a standard normal Z.
double normal_two_sided_critical(double alpha);

/// Batch residual variances sharing one factorization of the conditioning
/// block. Built either from data (scatter matrix, df = n - |S| - 1) or from a
/// population covariance (plain Schur complement).
class ResidualVarianceEngine {
public:
    static ResidualVarianceEngine from_sample(const Dataset& data);
    static ResidualVarianceEngine from_covariance(const Matrix& cov);

    std::size_t variables() const noexcept { return cross_.rows(); }

    /// Residual variance of each candidate given `given`. Sample mode throws
    /// InsufficientSamplesError when n <= |given| + 1 and
    /// DegenerateDesignError when the conditioning block stays singular after
    /// jitter. Population mode throws NumericalDegeneracyError instead of
    /// jittering.
    std::vector<double> evaluate(std::span<const std::size_t> given,
                                 std::span<const std::size_t> candidates) const;

private:
    ResidualVarianceEngine(Matrix cross, std::size_t samples, bool population);

    Matrix cross_;
    std::size_t samples_;
    bool population_;
};

}  // namespace gsem::numerics

#endif  // GSEM_NUMERICS_STATISTICS_HPP
