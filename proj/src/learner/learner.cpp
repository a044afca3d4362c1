#include <gsem/learner/learner.hpp>

#include <cmath>
#include <functional>
#include <string>

#include <gsem/error.hpp>
#include <gsem/numerics/sequential_regression.hpp>
#include <gsem/numerics/statistics.hpp>

namespace gsem::learner {

std::string_view to_string(ParentTestMode mode) {
    return mode == ParentTestMode::conditional ? "conditional" : "marginal";
}

std::optional<ParentTestMode> parse_parent_test_mode(std::string_view name) {
    if (name == "conditional") return ParentTestMode::conditional;
    if (name == "marginal") return ParentTestMode::marginal;
    return std::nullopt;
}

void LearnConfig::validate() const {
    std::string problems;
    if (!(alpha > 0.0 && alpha < 1.0)) problems += "alpha must lie in (0, 1); ";
    if (!(oracle_tolerance > 0.0)) problems += "oracle_tolerance must be positive; ";
    if (!problems.empty()) throw ValidationError(problems.substr(0, problems.size() - 2));
}

namespace {

using VarianceStep = std::function<std::vector<double>(const std::vector<Node>& selected,
                                                       const std::vector<Node>& candidates)>;
using Commit = std::function<void(Node)>;

OrderingEstimate forward_selection(std::size_t p, const VarianceStep& variances_of, const Commit& commit) {
    OrderingEstimate out;
    std::vector<Node> selected;
    std::vector<char> taken(p, 0);
    for (std::size_t step = 0; step < p; ++step) {
        std::vector<Node> candidates;
        for (Node v = 0; v < p; ++v)
            if (!taken[v]) candidates.push_back(v);

        std::vector<double> variances;
        try {
            variances = variances_of(selected, candidates);
        } catch (const InsufficientSamplesError& e) {
            throw InsufficientSamplesError("ordering step " + std::to_string(step + 1) + ": " + e.what());
        } catch (const DegenerateDesignError& e) {
            throw DegenerateDesignError("ordering step " + std::to_string(step + 1) + ": " + e.what());
        }

        std::size_t best = 0;
        std::vector<CandidateVariance> row;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            row.push_back({candidates[c], variances[c]});
            if (variances[c] < variances[best]) best = c;
        }
        out.step_variances.push_back(std::move(row));
        try {
            commit(candidates[best]);
        } catch (const DegenerateDesignError& e) {
            throw DegenerateDesignError("ordering step " + std::to_string(step + 1) + ": " + e.what());
        }
        selected.push_back(candidates[best]);
        taken[candidates[best]] = 1;
    }
    out.ordering = Ordering(std::move(selected));
    return out;
}

using Correlation = std::function<double(std::size_t m, std::size_t j, const std::vector<Node>& conditioning)>;
using Decide = std::function<TestRecord(double r, std::size_t conditioning_size)>;

ParentEstimate select_parents(std::size_t p, const Ordering& ordering, ParentTestMode mode,
                              const Correlation& correlation, const Decide& decide) {
    ParentEstimate out;
    std::vector<graph::Edge> edges;
    for (std::size_t m = 1; m < p; ++m) {
        const Node child = ordering[m];
        for (std::size_t j = 0; j < m; ++j) {
            const Node candidate = ordering[j];
            std::vector<Node> conditioning;
            if (mode == ParentTestMode::conditional)
                for (std::size_t other = 0; other < m; ++other)
                    if (other != j) conditioning.push_back(ordering[other]);
            const double r = correlation(m, j, conditioning);
            TestRecord rec = decide(r, conditioning.size());
            rec.child = child;
            rec.candidate = candidate;
            rec.conditioning = std::move(conditioning);
            rec.partial_correlation = r;
            if (rec.dependent) edges.emplace_back(candidate, child);
            out.test_log.push_back(std::move(rec));
        }
    }
    out.dag = Dag(p, std::move(edges));
    return out;
}

void require_cover(const Ordering& ordering, std::size_t p) {
    if (ordering.size() != p)
        throw PreconditionError("ordering covers " + std::to_string(ordering.size()) + " nodes, data has " +
                                std::to_string(p));
}

}  // namespace

OrderingEstimate estimate_ordering(const numerics::Dataset& data, const LearnConfig& cfg) {
    cfg.validate();
    numerics::SequentialRegression regression(data);
    return forward_selection(
        data.variables(),
        [&](const std::vector<Node>&, const std::vector<Node>& candidates) {
            return regression.residual_variances(candidates);
        },
        [&](Node v) { regression.select(v); });
}

ParentEstimate estimate_parents(const numerics::Dataset& data, const Ordering& ordering, const LearnConfig& cfg) {
    cfg.validate();
    const std::size_t n = data.samples();
    const std::size_t p = data.variables();
    require_cover(ordering, p);
    const std::size_t largest = cfg.parent_test_mode == ParentTestMode::conditional && p >= 2 ? p - 2 : 0;
    if (p >= 2 && n <= largest + 3)
        throw InsufficientSamplesError("parent tests with conditioning sets of size " + std::to_string(largest) +
                                       " need more than " + std::to_string(largest + 3) + " samples, got " +
                                       std::to_string(n));

    Correlation correlation;
    numerics::Matrix table;
    if (cfg.parent_test_mode == ParentTestMode::conditional) {
        numerics::SequentialRegression regression(data);
        for (Node v : ordering.nodes()) regression.select(v);
        table = numerics::ordered_partial_correlations(regression.r_factor());
        correlation = [&](std::size_t m, std::size_t j, const std::vector<Node>&) { return table(m, j); };
    } else {
        table = numerics::sample_covariance(data);
        correlation = [&](std::size_t m, std::size_t j, const std::vector<Node>&) {
            return numerics::partial_correlation(table, ordering[m], ordering[j], {});
        };
    }
    return select_parents(p, ordering, cfg.parent_test_mode, correlation, [&](double r, std::size_t s) {
        const auto d = numerics::fisher_z_test(r, n, s, cfg.alpha);
        TestRecord rec;
        rec.statistic = d.statistic;
        rec.threshold = d.threshold;
        rec.dependent = d.dependent;
        return rec;
    });
}

LearnResult learn(const numerics::Dataset& data, const LearnConfig& cfg) {
    cfg.validate();
    if (data.samples() < 2)
        throw InsufficientSamplesError("learning needs at least 2 samples, got " + std::to_string(data.samples()));
    OrderingEstimate order = estimate_ordering(data, cfg);
    ParentEstimate parents = estimate_parents(data, order.ordering, cfg);
    return {std::move(order.ordering), std::move(parents.dag), std::move(order.step_variances),
            std::move(parents.test_log)};
}

LearnResult learn_from_covariance(const numerics::Matrix& cov, const LearnConfig& cfg) {
    cfg.validate();
    const auto engine = numerics::ResidualVarianceEngine::from_covariance(cov);
    OrderingEstimate order = forward_selection(
        cov.rows(),
        [&](const std::vector<Node>& selected, const std::vector<Node>& candidates) {
            return engine.evaluate(selected, candidates);
        },
        [](Node) {});
    const Ordering& ordering = order.ordering;
    ParentEstimate parents = select_parents(
        cov.rows(), ordering, cfg.parent_test_mode,
        [&](std::size_t m, std::size_t j, const std::vector<Node>& conditioning) {
            return numerics::partial_correlation(cov, ordering[m], ordering[j], conditioning);
        },
        [&](double r, std::size_t) {
            TestRecord rec;
            rec.statistic = std::fabs(r);
            rec.threshold = cfg.oracle_tolerance;
            rec.dependent = std::fabs(r) >= cfg.oracle_tolerance;
            return rec;
        });
    return {std::move(order.ordering), std::move(parents.dag), std::move(order.step_variances),
            std::move(parents.test_log)};
}

}  // namespace gsem::learner
