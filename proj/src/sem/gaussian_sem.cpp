#include <gsem/sem/gaussian_sem.hpp>

#include <cmath>
#include <string>

#include <gsem/error.hpp>
#include <gsem/numerics/linalg.hpp>
#include <gsem/numerics/summation.hpp>

namespace gsem::sem {

namespace {

graph::Dag support_dag(const Matrix& weights) {
    std::vector<graph::Edge> edges;
    for (Node j = 0; j < weights.rows(); ++j)
        for (Node k = 0; k < weights.cols(); ++k)
            if (weights(j, k) != 0.0) edges.emplace_back(k, j);
    try {
        return graph::Dag(weights.rows(), std::move(edges));
    } catch (const PreconditionError& e) {
        throw PreconditionError(std::string("edge-weight support is not a DAG: ") + e.what());
    }
}

}  // namespace

GaussianSem::GaussianSem(Matrix weights, std::vector<double> sigma2, std::vector<double> intercepts)
    : weights_(std::move(weights)), sigma2_(std::move(sigma2)), intercepts_(std::move(intercepts)) {
    const std::size_t p = sigma2_.size();
    if (intercepts_.empty()) intercepts_.assign(p, 0.0);
    if (weights_.rows() != p || weights_.cols() != p)
        throw DimensionError("weight matrix must be " + std::to_string(p) + "x" + std::to_string(p));
    if (intercepts_.size() != p) throw DimensionError("intercept vector must have length " + std::to_string(p));
    for (std::size_t j = 0; j < p; ++j) {
        if (!(sigma2_[j] > 0.0) || !std::isfinite(sigma2_[j]))
            throw PreconditionError("error variance of node " + std::to_string(j) + " must be positive and finite");
        if (!std::isfinite(intercepts_[j])) throw PreconditionError("non-finite intercept at node " + std::to_string(j));
        for (std::size_t k = 0; k < p; ++k)
            if (!std::isfinite(weights_(j, k))) throw PreconditionError("non-finite edge weight");
    }
    dag_ = support_dag(weights_);
}

Matrix population_covariance(const GaussianSem& m) {
    const std::size_t p = m.size();
    const auto order = graph::topological_order(m.dag());
    Matrix cov(p, p);
    std::vector<char> done(p, 0);
    for (Node j : order.nodes()) {
        const auto parents = m.dag().parents(j);
        // Cov(X_j, X_i) = sum_k beta_jk Cov(X_k, X_i) for every earlier i
        for (Node i = 0; i < p; ++i) {
            if (!done[i]) continue;
            numerics::CompensatedSum s;
            for (Node k : parents) s.add(m.weight(j, k) * cov(k, i));
            cov(j, i) = cov(i, j) = s.value();
        }
        numerics::CompensatedSum v;
        v.add(m.sigma2()[j]);
        for (Node k : parents) v.add(m.weight(j, k) * cov(k, j));
        cov(j, j) = v.value();
        done[j] = 1;
    }
    return cov;
}

Matrix population_precision(const GaussianSem& m) {
    const std::size_t p = m.size();
    Matrix theta(p, p);
    for (Node a = 0; a < p; ++a)
        for (Node b = a; b < p; ++b) {
            numerics::CompensatedSum s;
            for (Node j = 0; j < p; ++j) {
                const double ia = (j == a ? 1.0 : 0.0) - m.weight(j, a);
                const double ib = (j == b ? 1.0 : 0.0) - m.weight(j, b);
                if (ia != 0.0 && ib != 0.0) s.add(ia * ib / m.sigma2()[j]);
            }
            theta(a, b) = theta(b, a) = s.value();
        }
    return theta;
}

double population_conditional_variance(const Matrix& cov, Node k, std::span<const Node> given) {
    if (!cov.square() || k >= cov.rows()) throw DimensionError("conditional variance index out of range");
    std::vector<Node> idx;
    idx.reserve(given.size() + 1);
    for (Node s : given) {
        if (s == k) throw PreconditionError("variable appears in its own conditioning set");
        if (s >= cov.rows()) throw DimensionError("conditioning index out of range");
        idx.push_back(s);
    }
    idx.push_back(k);
    const auto lower = numerics::try_cholesky(cov.principal_submatrix(idx));
    if (!lower)
        throw NumericalDegeneracyError("covariance is not positive definite on variable " + std::to_string(k) +
                                       " and its conditioning set");
    const double l = (*lower)(given.size(), given.size());
    return l * l;
}

GaussianSem relabel(const GaussianSem& m, std::span<const Node> perm) {
    const std::size_t p = m.size();
    graph::Ordering check{std::vector<Node>(perm.begin(), perm.end())};
    if (check.size() != p) throw DimensionError("relabeling permutation has the wrong length");
    Matrix w(p, p);
    std::vector<double> s2(p), b0(p);
    for (Node j = 0; j < p; ++j) {
        s2[perm[j]] = m.sigma2()[j];
        b0[perm[j]] = m.intercepts()[j];
        for (Node k = 0; k < p; ++k) w(perm[j], perm[k]) = m.weight(j, k);
    }
    return GaussianSem(std::move(w), std::move(s2), std::move(b0));
}

}  // namespace gsem::sem
