#ifndef GSEM_BENCH_EXPERIMENT_HPP
#define GSEM_BENCH_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gsem/learner/learner.hpp>

namespace gsem::bench {

enum class ExperimentProtocol { homogeneous, heterogeneous, nonfaithful };

std::string_view to_string(ExperimentProtocol protocol);
std::optional<ExperimentProtocol> parse_experiment_protocol(std::string_view name);

struct ExperimentConfig {
    ExperimentProtocol protocol = ExperimentProtocol::homogeneous;
    /// Ignored by the nonfaithful protocol, whose model has three nodes.
    std::size_t p = 10;
    std::vector<std::size_t> n_grid{100, 400, 700, 1000};
    std::size_t replications = 20;
    std::uint64_t seed = 1;
    double alpha = 0.01;
    learner::ParentTestMode parent_test_mode = learner::ParentTestMode::conditional;
    /// Worker threads; 0 uses the hardware concurrency. Results do not depend on it.
    std::size_t threads = 0;
    /// When false every cell reports 0 seconds, so reruns emit identical files.
    bool record_timing = false;

    /// Number of nodes actually simulated.
    std::size_t nodes() const { return protocol == ExperimentProtocol::nonfaithful ? 3 : p; }

    /// Every violated invariant, in a fixed order; empty when valid.
    std::vector<std::string> violations() const;
    /// Throws ValidationError listing all violations.
    void validate() const;
};

/// Full-scale grid: n = 100, 200, ..., 1000 with 100 replications.
ExperimentConfig full_scale(ExperimentConfig cfg);

struct Cell {
    std::size_t n = 0;
    std::size_t rep = 0;
    std::size_t hamming_dag = 0;
    std::size_t hamming_cpdag = 0;
    std::size_t true_edges = 0;
    double seconds = 0.0;
    bool identifiable = false;
    bool failed = false;
    std::string failure;
};

struct Aggregate {
    std::size_t n = 0;
    /// Cells that completed; failed cells are excluded from every statistic.
    std::size_t count = 0;
    double mean_hd = 0.0;
    double se_hd = 0.0;
    double mean_hd_mec = 0.0;
    double se_hd_mec = 0.0;
    double mean_seconds = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    /// Sorted by (n, rep).
    std::vector<Cell> cells;
    /// One per n, in grid order.
    std::vector<Aggregate> aggregates;
};

/// Mean and standard error (sample sd / sqrt(count), 0 for fewer than two
/// cells) of the completed cells at each n.
std::vector<Aggregate> aggregate(const std::vector<Cell>& cells, const std::vector<std::size_t>& n_grid);

/// Replication r draws its SEM from derive_seed(seed, {r, 0}) and its sample
/// at size n from derive_seed(seed, {r, 1, n}); learner failures are recorded
/// in the cell.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct RuntimeRow {
    std::size_t p = 0;
    std::size_t n = 0;
    std::size_t replications = 0;
    double mean_seconds = 0.0;
};

/// Mean wall-clock of learn on homogeneous models for every (p, n) pair.
/// Throws ValidationError for empty grids, p < 2, n < 1 or fewer than 3
/// replications.
std::vector<RuntimeRow> measure_runtime(const std::vector<std::size_t>& p_grid,
                                        const std::vector<std::size_t>& n_grid, std::uint64_t seed,
                                        std::size_t replications = 3);

}  // namespace gsem::bench

#endif  // GSEM_BENCH_EXPERIMENT_HPP
