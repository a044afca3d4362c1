// Independent reference computations used only by the tests.
#ifndef GSEM_TESTS_ORACLES_HPP
#define GSEM_TESTS_ORACLES_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include <gsem/numerics/matrix.hpp>

namespace oracle {

inline Eigen::MatrixXd to_eigen(const gsem::numerics::Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

inline gsem::numerics::Matrix from_eigen(const Eigen::MatrixXd& m) {
    gsem::numerics::Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

/// Two-sided standard normal tail via erfc.
inline double two_sided_tail(double z) { return std::erfc(z / std::sqrt(2.0)); }

/// z with two_sided_tail(z) = alpha, by bisection.
inline double critical_value(double alpha) {
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (two_sided_tail(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Residual variance of y on x with intercept from the textbook formulas.
inline double simple_regression_residual_variance(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n, my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
    const double slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - my - slope * (x[i] - mx);
        rss += e * e;
    }
    return rss / (n - 2.0);
}

/// Partial correlation of (j, k) given `given`, from the inverse of the
/// relevant principal block.
inline double partial_correlation(const Eigen::MatrixXd& cov, int j, int k, const std::vector<int>& given) {
    std::vector<int> idx{j, k};
    idx.insert(idx.end(), given.begin(), given.end());
    Eigen::MatrixXd block(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = cov(idx[a], idx[b]);
    const Eigen::MatrixXd theta = block.inverse();
    return -theta(0, 1) / std::sqrt(theta(0, 0) * theta(1, 1));
}

/// Residual variance from an explicit least-squares fit with intercept
/// (Householder QR), df = n - |given| - 1.
inline double regression_residual_variance(const Eigen::MatrixXd& data, int j, const std::vector<int>& given) {
    const Eigen::Index n = data.rows();
    Eigen::MatrixXd design(n, given.size() + 1);
    design.col(0).setOnes();
    for (std::size_t c = 0; c < given.size(); ++c) design.col(c + 1) = data.col(given[c]);
    const Eigen::VectorXd y = data.col(j);
    const Eigen::VectorXd beta = design.householderQr().solve(y);
    const Eigen::VectorXd resid = y - design * beta;
    return resid.squaredNorm() / static_cast<double>(n - static_cast<Eigen::Index>(given.size()) - 1);
}

}  // namespace oracle

#endif  // GSEM_TESTS_ORACLES_HPP
