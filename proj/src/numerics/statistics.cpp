#include <gsem/numerics/statistics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include <gsem/error.hpp>
#include <gsem/numerics/linalg.hpp>
#include <gsem/numerics/summation.hpp>

namespace gsem::numerics {

namespace {

std::vector<double> centered_column(const Dataset& data, std::size_t j) {
    std::vector<double> col = data.column(j);
    const double mean = compensated_sum(col) / static_cast<double>(col.size());
    for (double& v : col) v -= mean;
    return col;
}

void check_index(std::size_t idx, std::size_t p, const char* what) {
    if (idx >= p)
        throw DimensionError(std::string(what) + " index " + std::to_string(idx) + " out of range for " +
                             std::to_string(p) + " variables");
}

void check_disjoint(std::size_t j, std::span<const std::size_t> given, std::size_t p) {
    check_index(j, p, "target");
    for (std::size_t s : given) {
        check_index(s, p, "conditioning");
        if (s == j) throw PreconditionError("variable " + std::to_string(j) + " appears in its own conditioning set");
    }
}

}  // namespace

Matrix centered_cross_products(const Dataset& data) {
    const std::size_t p = data.variables();
    std::vector<std::vector<double>> cols;
    cols.reserve(p);
    for (std::size_t j = 0; j < p; ++j) cols.push_back(centered_column(data, j));
    Matrix cross(p, p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b) {
            const double v = compensated_dot(cols[a], cols[b]);
            cross(a, b) = v;
            cross(b, a) = v;
        }
    return cross;
}

Matrix sample_covariance(const Dataset& data) {
    const std::size_t n = data.samples();
    if (n < 2) throw DimensionError("sample covariance needs at least 2 rows, got " + std::to_string(n));
    Matrix cov = centered_cross_products(data);
    const double denom = static_cast<double>(n - 1);
    for (std::size_t a = 0; a < cov.rows(); ++a)
        for (std::size_t b = 0; b < cov.cols(); ++b) cov(a, b) /= denom;
    return cov;
}

double conditional_variance(const Dataset& data, std::size_t j, std::span<const std::size_t> given) {
    const std::size_t n = data.samples();
    const std::size_t p = data.variables();
    check_disjoint(j, given, p);
    if (n <= given.size() + 1)
        throw InsufficientSamplesError("regression on " + std::to_string(given.size()) +
                                       " variables needs more than " + std::to_string(given.size() + 1) +
                                       " samples, got " + std::to_string(n));

    const std::vector<double> y = centered_column(data, j);
    const double df = static_cast<double>(n - given.size() - 1);
    if (given.empty()) return compensated_dot(y, y) / df;

    const std::size_t s = given.size();
    std::vector<std::vector<double>> xs;
    xs.reserve(s);
    for (std::size_t c : given) xs.push_back(centered_column(data, c));

    Matrix gram(s, s);
    std::vector<double> rhs(s);
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = a; b < s; ++b) gram(a, b) = gram(b, a) = compensated_dot(xs[a], xs[b]);
        rhs[a] = compensated_dot(xs[a], y);
    }
    const Matrix lower = cholesky_with_jitter(gram);
    const std::vector<double> beta = cholesky_solve_factored(lower, rhs);

    CompensatedSum rss;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum fit;
        for (std::size_t a = 0; a < s; ++a) fit.add(beta[a] * xs[a][i]);
        const double r = y[i] - fit.value();
        rss.add(r * r);
    }
    return std::max(0.0, rss.value()) / df;
}

double partial_correlation(const Matrix& cov, std::size_t j, std::size_t k, std::span<const std::size_t> given) {
    if (!cov.square()) throw DimensionError("covariance must be square");
    const std::size_t p = cov.rows();
    check_disjoint(j, given, p);
    check_disjoint(k, given, p);
    if (j == k) throw PreconditionError("partial correlation of a variable with itself");

    // Factor the block ordered (given..., j, k); the trailing 2x2 of L is the
    // Cholesky factor of the conditional covariance of (j, k).
    std::vector<std::size_t> idx(given.begin(), given.end());
    idx.push_back(j);
    idx.push_back(k);
    const auto lower = try_cholesky(cov.principal_submatrix(idx));
    if (!lower)
        throw NumericalDegeneracyError("covariance restricted to {" + std::to_string(j) + ", " + std::to_string(k) +
                                       "} and a conditioning set of size " + std::to_string(given.size()) +
                                       " is not positive definite");
    const std::size_t m = given.size();
    const double b = (*lower)(m + 1, m);
    const double c = (*lower)(m + 1, m + 1);
    const double r = b / std::hypot(b, c);
    return std::clamp(r, -kCorrelationClamp, kCorrelationClamp);
}

double normal_two_sided_critical(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("significance level must lie in (0, 1)");
    const boost::math::normal standard;
    return boost::math::quantile(boost::math::complement(standard, alpha / 2.0));
}

IndependenceDecision fisher_z_test(double r, std::size_t n, std::size_t s, double alpha) {
    if (!std::isfinite(r) || std::fabs(r) > 1.0)
        throw PreconditionError("correlation " + std::to_string(r) + " is outside [-1, 1]");
    if (n <= s + 3)
        throw InsufficientSamplesError("Fisher z test with conditioning set of size " + std::to_string(s) +
                                       " needs more than " + std::to_string(s + 3) + " samples, got " +
                                       std::to_string(n));
    IndependenceDecision d;
    d.threshold = normal_two_sided_critical(alpha);
    if (std::fabs(r) == 1.0) {
        d.dependent = true;
        d.infinite_statistic = true;
        d.statistic = std::numeric_limits<double>::infinity();
        return d;
    }
    d.statistic = std::sqrt(static_cast<double>(n - s - 3)) * std::fabs(std::atanh(r));
    d.dependent = d.statistic > d.threshold;
    return d;
}

ResidualVarianceEngine::ResidualVarianceEngine(Matrix cross, std::size_t samples, bool population)
    : cross_(std::move(cross)), samples_(samples), population_(population) {}

ResidualVarianceEngine ResidualVarianceEngine::from_sample(const Dataset& data) {
    return ResidualVarianceEngine(centered_cross_products(data), data.samples(), false);
}

ResidualVarianceEngine ResidualVarianceEngine::from_covariance(const Matrix& cov) {
    if (!cov.square()) throw DimensionError("covariance must be square");
    if (!cov.is_symmetric(1e-10)) throw NumericalDegeneracyError("covariance is not symmetric");
    return ResidualVarianceEngine(cov, 0, true);
}

std::vector<double> ResidualVarianceEngine::evaluate(std::span<const std::size_t> given,
                                                     std::span<const std::size_t> candidates) const {
    const std::size_t p = cross_.rows();
    for (std::size_t c : candidates) check_disjoint(c, given, p);

    double denom = 1.0;
    if (!population_) {
        if (samples_ <= given.size() + 1)
            throw InsufficientSamplesError("regression on " + std::to_string(given.size()) +
                                           " variables needs more than " + std::to_string(given.size() + 1) +
                                           " samples, got " + std::to_string(samples_));
        denom = static_cast<double>(samples_ - given.size() - 1);
    }

    std::vector<double> out;
    out.reserve(candidates.size());
    if (given.empty()) {
        for (std::size_t c : candidates) {
            if (population_ && !(cross_(c, c) > 0.0))
                throw NumericalDegeneracyError("non-positive variance for variable " + std::to_string(c));
            out.push_back(cross_(c, c) / denom);
        }
        return out;
    }

    const Matrix block = cross_.principal_submatrix(given);
    const Matrix lower = population_ ? cholesky_factor(block) : cholesky_with_jitter(block);
    std::vector<double> coupling(given.size());
    for (std::size_t c : candidates) {
        for (std::size_t a = 0; a < given.size(); ++a) coupling[a] = cross_(given[a], c);
        const std::vector<double> w = forward_substitute(lower, coupling);
        CompensatedSum schur;
        schur.add(cross_(c, c));
        for (double v : w) schur.add(-v * v);
        double value = schur.value();
        if (population_ && !(value > 0.0))
            throw NumericalDegeneracyError("covariance is not positive definite on the conditioning block of variable " +
                                           std::to_string(c));
        out.push_back(std::max(0.0, value) / denom);
    }
    return out;
}

}  // namespace gsem::numerics
