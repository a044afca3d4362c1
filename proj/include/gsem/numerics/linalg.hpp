#ifndef GSEM_NUMERICS_LINALG_HPP
#define GSEM_NUMERICS_LINALG_HPP

#include <optional>
#include <span>
#include <vector>

#include <gsem/numerics/matrix.hpp>

namespace gsem::numerics {

/// Lower-triangular L with A = L L^T, or nullopt when A is not numerically SPD.
/// A pivot counts as non-positive when it drops below 64 eps times the
/// corresponding diagonal entry of A.
std::optional<Matrix> try_cholesky(const Matrix& a);

/// Throws NumericalDegeneracyError when A is not symmetric positive definite.
Matrix cholesky_factor(const Matrix& a);

/// Cholesky of a Gram matrix with a single ridge retry: on failure, adds
/// 1e-10 * trace / dim to the diagonal and tries again. Throws
/// DegenerateDesignError if the jittered matrix still fails.
Matrix cholesky_with_jitter(const Matrix& gram);

/// Solves L y = b.
std::vector<double> forward_substitute(const Matrix& lower, std::span<const double> b);
/// Solves L^T x = y.
std::vector<double> backward_substitute_transposed(const Matrix& lower, std::span<const double> y);

/// Solves A x = b for SPD A.
std::vector<double> cholesky_solve(const Matrix& a, std::span<const double> b);
std::vector<double> cholesky_solve_factored(const Matrix& lower, std::span<const double> b);

/// Inverse of an SPD matrix through its Cholesky factor.
Matrix spd_inverse(const Matrix& a);

/// (I - B)^{-1} for a B whose support is acyclic. `order` must place every k
/// with b(j, k) != 0 before j.
Matrix inverse_identity_minus(const Matrix& b, std::span<const std::size_t> order);

}  // namespace gsem::numerics

#endif  // GSEM_NUMERICS_LINALG_HPP
