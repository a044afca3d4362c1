#include <gsem/numerics/linalg.hpp>

#include <cmath>
#include <limits>

#include <gsem/error.hpp>
#include <gsem/numerics/summation.hpp>

namespace gsem::numerics {

namespace {
constexpr double kPivotFloor = 64.0 * std::numeric_limits<double>::epsilon();
constexpr double kJitterScale = 1e-10;
}  // namespace

std::optional<Matrix> try_cholesky(const Matrix& a) {
    if (!a.square() || !a.is_symmetric(1e-10)) return std::nullopt;
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        CompensatedSum d;
        d.add(a(j, j));
        for (std::size_t k = 0; k < j; ++k) d.add(-l(j, k) * l(j, k));
        const double pivot = d.value();
        if (!std::isfinite(pivot) || pivot <= kPivotFloor * std::fabs(a(j, j)) || pivot <= 0.0)
            return std::nullopt;
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            CompensatedSum s;
            s.add(a(i, j));
            for (std::size_t k = 0; k < j; ++k) s.add(-l(i, k) * l(j, k));
            l(i, j) = s.value() / ljj;
        }
    }
    return l;
}

Matrix cholesky_factor(const Matrix& a) {
    if (!a.square()) throw DimensionError("Cholesky of a non-square matrix");
    auto l = try_cholesky(a);
    if (!l) throw NumericalDegeneracyError("matrix is not symmetric positive definite");
    return *std::move(l);
}

Matrix cholesky_with_jitter(const Matrix& gram) {
    if (!gram.square()) throw DimensionError("Cholesky of a non-square matrix");
    if (auto l = try_cholesky(gram)) return *std::move(l);
    const std::size_t n = gram.rows();
    const double ridge = n == 0 ? 0.0 : kJitterScale * gram.trace() / static_cast<double>(n);
    Matrix jittered = gram;
    for (std::size_t i = 0; i < n; ++i) jittered(i, i) += ridge;
    if (auto l = try_cholesky(jittered)) return *std::move(l);
    throw DegenerateDesignError("design Gram matrix is singular even after ridge jitter of " +
                                std::to_string(ridge));
}

std::vector<double> forward_substitute(const Matrix& lower, std::span<const double> b) {
    const std::size_t n = lower.rows();
    if (b.size() != n) throw DimensionError("forward substitution size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum s;
        s.add(b[i]);
        for (std::size_t k = 0; k < i; ++k) s.add(-lower(i, k) * y[k]);
        y[i] = s.value() / lower(i, i);
    }
    return y;
}

std::vector<double> backward_substitute_transposed(const Matrix& lower, std::span<const double> y) {
    const std::size_t n = lower.rows();
    if (y.size() != n) throw DimensionError("backward substitution size mismatch");
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        CompensatedSum s;
        s.add(y[ii]);
        for (std::size_t k = ii + 1; k < n; ++k) s.add(-lower(k, ii) * x[k]);
        x[ii] = s.value() / lower(ii, ii);
    }
    return x;
}

std::vector<double> cholesky_solve_factored(const Matrix& lower, std::span<const double> b) {
    return backward_substitute_transposed(lower, forward_substitute(lower, b));
}

std::vector<double> cholesky_solve(const Matrix& a, std::span<const double> b) {
    if (a.rows() != b.size()) throw DimensionError("right-hand side size does not match matrix");
    return cholesky_solve_factored(cholesky_factor(a), b);
}

Matrix spd_inverse(const Matrix& a) {
    const Matrix l = cholesky_factor(a);
    const std::size_t n = a.rows();
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const auto col = cholesky_solve_factored(l, e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    // symmetrize away rounding
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = inv(j, i) = avg;
        }
    return inv;
}

Matrix inverse_identity_minus(const Matrix& b, std::span<const std::size_t> order) {
    const std::size_t p = b.rows();
    if (!b.square() || order.size() != p) throw DimensionError("inverse_identity_minus shape mismatch");
    // A = (I - B)^{-1} satisfies A = I + B A, so row j of A is e_j + sum_k b(j,k) row k of A.
    Matrix a(p, p);
    for (std::size_t j : order) {
        for (std::size_t col = 0; col < p; ++col) {
            CompensatedSum s;
            s.add(j == col ? 1.0 : 0.0);
            for (std::size_t k = 0; k < p; ++k)
                if (b(j, k) != 0.0) s.add(b(j, k) * a(k, col));
            a(j, col) = s.value();
        }
    }
    return a;
}

}  // namespace gsem::numerics
