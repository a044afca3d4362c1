#include <gsem/sem/identifiability.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <gsem/error.hpp>
#include <gsem/numerics/summation.hpp>

namespace gsem::sem {

namespace {

constexpr double kSelfCheckTolerance = 1e-9;

// T = (I - B)^-1, so X = T eps. Rows are filled along a consistent ordering.
Matrix total_effects(const GaussianSem& m, const graph::Ordering& ordering) {
    const std::size_t p = m.size();
    Matrix t(p, p);
    for (std::size_t pos = 0; pos < p; ++pos) {
        const Node v = ordering[pos];
        const auto parents = m.dag().parents(v);
        for (std::size_t c = 0; c < p; ++c) {
            numerics::CompensatedSum s;
            s.add(c == v ? 1.0 : 0.0);
            for (Node a : parents) s.add(m.weight(v, a) * t(a, c));
            t(v, c) = s.value();
        }
    }
    return t;
}

}  // namespace

IdentifiabilityReport check_identifiability(const GaussianSem& m, const graph::Ordering& ordering, CheckScope scope) {
    if (ordering.size() != m.size()) throw PreconditionError("ordering length does not match the model");
    if (!graph::is_consistent(ordering, m.dag()))
        throw PreconditionError("ordering is not consistent with the model's graph");

    // The variables before position pos form an ancestral set, so conditioning
    // on them is conditioning on their noise terms: the Schur complement of
    // Sigma reduces to sum over the remaining l of T_kl^2 sigma_l^2. Summing
    // positive terms avoids the cancellation that ruins the direct Schur
    // complement once covariance entries grow large in dense models.
    const std::size_t p = m.size();
    const Matrix t = total_effects(m, ordering);
    const auto& sigma2 = m.sigma2();

    // Row k of the parent combination sum_a beta_ka X_a in noise coordinates.
    Matrix parent_term(p, p);
    for (Node k = 0; k < p; ++k) {
        const auto parents = m.dag().parents(k);
        for (std::size_t c = 0; c < p; ++c) {
            numerics::CompensatedSum s;
            for (Node a : parents) s.add(m.weight(k, a) * t(a, c));
            parent_term(k, c) = s.value();
        }
    }

    IdentifiabilityReport report;
    report.scope = scope;
    report.worst_margin = std::numeric_limits<double>::infinity();

    for (std::size_t pos = 0; pos < p; ++pos) {
        const Node j = ordering[pos];
        std::vector<Node> targets;
        if (scope == CheckScope::descendants) {
            targets = graph::descendants(m.dag(), j);
        } else {
            for (std::size_t later = pos + 1; later < p; ++later) targets.push_back(ordering[later]);
            std::sort(targets.begin(), targets.end());
        }
        for (Node k : targets) {
            numerics::CompensatedSum rhs, explained;
            for (std::size_t later = pos; later < p; ++later) {
                const Node l = ordering[later];
                rhs.add(t(k, l) * t(k, l) * sigma2[l]);
                explained.add(parent_term(k, l) * parent_term(k, l) * sigma2[l]);
            }
            Margin mg;
            mg.j = j;
            mg.k = k;
            mg.lhs = sigma2[j];
            mg.rhs = rhs.value();
            mg.decomposed_rhs = sigma2[k] + explained.value();
            if (std::fabs(mg.rhs - mg.decomposed_rhs) > kSelfCheckTolerance * std::max(1.0, std::fabs(mg.rhs)))
                throw NumericalDegeneracyError("law of total variance self-check failed for j = " + std::to_string(j) +
                                               ", k = " + std::to_string(k));
            report.satisfied = report.satisfied && mg.lhs < mg.rhs;
            report.worst_margin = std::min(report.worst_margin, mg.margin());
            report.margins.push_back(mg);
        }
    }
    return report;
}

double bivariate_threshold_park(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("variance ratio must be positive");
    return std::max(0.0, 1.0 - r * r);
}

double bivariate_threshold_loh(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("variance ratio must be positive");
    const double r2 = r * r;
    const double r4 = r2 * r2;
    if (r >= 1.0) return r2 * ((r2 - 1.0) + std::sqrt(r4 - 1.0));
    return (1.0 - r2) + std::sqrt(1.0 - r4);
}

}  // namespace gsem::sem
