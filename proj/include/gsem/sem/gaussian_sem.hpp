#ifndef GSEM_SEM_GAUSSIAN_SEM_HPP
#define GSEM_SEM_GAUSSIAN_SEM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <gsem/graph/dag.hpp>
#include <gsem/numerics/dataset.hpp>
#include <gsem/numerics/matrix.hpp>

namespace gsem::sem {

using graph::Node;
using numerics::Matrix;

/// Linear SEM X = B0 + B X + eps with independent eps_j ~ N(0, sigma2_j).
///
/// weights(j, k) is the coefficient of parent k in the equation for child j,
/// so the nonzero pattern of B *transposed* is the edge set. Construction
/// rejects cyclic support, non-finite weights and non-positive variances.
class GaussianSem {
public:
    GaussianSem(Matrix weights, std::vector<double> sigma2, std::vector<double> intercepts = {});

    std::size_t size() const noexcept { return sigma2_.size(); }
    const Matrix& weights() const noexcept { return weights_; }
    double weight(Node child, Node parent) const { return weights_(child, parent); }
    const std::vector<double>& sigma2() const noexcept { return sigma2_; }
    const std::vector<double>& intercepts() const noexcept { return intercepts_; }
    const graph::Dag& dag() const noexcept { return dag_; }

    friend bool operator==(const GaussianSem& a, const GaussianSem& b) {
        return a.weights_ == b.weights_ && a.sigma2_ == b.sigma2_ && a.intercepts_ == b.intercepts_;
    }

private:
    Matrix weights_;
    std::vector<double> sigma2_;
    std::vector<double> intercepts_;
    graph::Dag dag_;
};

/// Sigma_X = (I - B)^{-1} Sigma_eps (I - B)^{-T}, accumulated along a
/// topological order of the structural equations.
Matrix population_covariance(const GaussianSem& m);

/// Theta = (I - B)^T Sigma_eps^{-1} (I - B).
Matrix population_precision(const GaussianSem& m);

/// Sigma_kk - Sigma_kS Sigma_SS^{-1} Sigma_Sk. For Gaussians this is
/// Var(X_k | X_S) for every value of X_S. Throws NumericalDegeneracyError if
/// cov is not SPD on {k} and S.
double population_conditional_variance(const Matrix& cov, Node k, std::span<const Node> given);

/// Same model with node i renamed to perm[i].
GaussianSem relabel(const GaussianSem& m, std::span<const Node> perm);

}  // namespace gsem::sem

#endif  // GSEM_SEM_GAUSSIAN_SEM_HPP
