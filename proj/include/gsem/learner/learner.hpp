#ifndef GSEM_LEARNER_LEARNER_HPP
#define GSEM_LEARNER_LEARNER_HPP

#include <optional>
#include <string_view>
#include <vector>

#include <gsem/graph/dag.hpp>
#include <gsem/numerics/dataset.hpp>
#include <gsem/numerics/matrix.hpp>

namespace gsem::learner {

using graph::Dag;
using graph::Node;
using graph::Ordering;

/// How a candidate parent pi_j of pi_m is tested.
enum class ParentTestMode {
    /// rho(pi_m, pi_j | all other predecessors of pi_m); the default.
    conditional,
    /// unconditional correlation of pi_m and pi_j.
    marginal,
};

std::string_view to_string(ParentTestMode mode);
std::optional<ParentTestMode> parse_parent_test_mode(std::string_view name);

struct LearnConfig {
    double alpha = 0.01;
    /// Population mode declares independence when |partial correlation| is below this.
    double oracle_tolerance = 1e-9;
    ParentTestMode parent_test_mode = ParentTestMode::conditional;

    /// Throws ValidationError unless 0 < alpha < 1 and oracle_tolerance > 0.
    void validate() const;
};

struct CandidateVariance {
    Node node = 0;
    double variance = 0.0;
};

struct TestRecord {
    Node child = 0;
    Node candidate = 0;
    std::vector<Node> conditioning;
    double partial_correlation = 0.0;
    /// Fisher z statistic, or |partial correlation| in population mode.
    double statistic = 0.0;
    /// Critical value, or the oracle tolerance in population mode.
    double threshold = 0.0;
    bool dependent = false;
};

struct OrderingEstimate {
    Ordering ordering;
    /// step_variances[m] lists every candidate still unselected at step m,
    /// ascending by node, with its conditional variance given the first m
    /// selected nodes.
    std::vector<std::vector<CandidateVariance>> step_variances;
};

struct ParentEstimate {
    Dag dag;
    std::vector<TestRecord> test_log;
};

struct LearnResult {
    Ordering ordering;
    Dag dag;
    std::vector<std::vector<CandidateVariance>> step_variances;
    std::vector<TestRecord> test_log;
};

/// Forward selection: at each step append the unselected node with the
/// smallest residual variance given the nodes already selected (ties go to
/// the smallest index). Throws InsufficientSamplesError naming the step when
/// a regression cannot be estimated.
OrderingEstimate estimate_ordering(const numerics::Dataset& data, const LearnConfig& cfg);

/// For each position m and each earlier position j, a Fisher z test at
/// cfg.alpha; pi_j -> pi_m is kept iff the test reports dependence.
ParentEstimate estimate_parents(const numerics::Dataset& data, const Ordering& ordering, const LearnConfig& cfg);

/// estimate_ordering followed by estimate_parents.
LearnResult learn(const numerics::Dataset& data, const LearnConfig& cfg);

/// The same algorithm on an exact covariance: Schur-complement variances for
/// the ordering, |partial correlation| < oracle_tolerance for independence.
LearnResult learn_from_covariance(const numerics::Matrix& cov, const LearnConfig& cfg);

}  // namespace gsem::learner

#endif  // GSEM_LEARNER_LEARNER_HPP
