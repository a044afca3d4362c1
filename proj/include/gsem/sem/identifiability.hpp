#ifndef GSEM_SEM_IDENTIFIABILITY_HPP
#define GSEM_SEM_IDENTIFIABILITY_HPP

#include <vector>

#include <gsem/graph/dag.hpp>
#include <gsem/sem/gaussian_sem.hpp>

namespace gsem::sem {

/// Which nodes k are compared against the node j at each ordering position.
enum class CheckScope {
    descendants,  ///< k in De(j), as the identifiability theorem states
    all_later,    ///< every k after j in the ordering (the proof's comparison)
};

/// One comparison sigma_j^2 < Var(X_k | X_before(j)).
struct Margin {
    Node j = 0;
    Node k = 0;
    double lhs = 0.0;   ///< sigma_j^2
    double rhs = 0.0;   ///< Var(X_k | X_before(j))
    /// sigma_k^2 + Var(E(X_k | X_Pa(k)) | X_before(j)), computed from B; must
    /// equal rhs by the law of total variance.
    double decomposed_rhs = 0.0;

    double margin() const { return rhs - lhs; }
};

struct IdentifiabilityReport {
    bool satisfied = true;
    CheckScope scope = CheckScope::descendants;
    std::vector<Margin> margins;
    /// Smallest rhs - lhs; +infinity when nothing was compared.
    double worst_margin = 0.0;
};

/// Checks the conditional-variance identifiability condition along `ordering`.
/// Throws PreconditionError if the ordering is not consistent with m's DAG
/// and NumericalDegeneracyError if the law-of-total-variance self-check fails
/// (|rhs - decomposed_rhs| > 1e-9 max(1, |rhs|)).
IdentifiabilityReport check_identifiability(const GaussianSem& m, const graph::Ordering& ordering,
                                            CheckScope scope = CheckScope::descendants);

/// Smallest beta^2 for which the bivariate model X1 -> X2 with error variance
/// ratio r = sigma2^2 / sigma1^2 is identifiable under the conditional
/// variance condition: max(0, 1 - r^2).
double bivariate_threshold_park(double r);

/// Loh-Buhlmann bivariate threshold:
/// r^2 ((r^2 - 1) + sqrt(r^4 - 1)) for r >= 1, (1 - r^2) + sqrt(1 - r^4) for r <= 1.
double bivariate_threshold_loh(double r);

}  // namespace gsem::sem

#endif  // GSEM_SEM_IDENTIFIABILITY_HPP
