#include <gsem/bench/experiment.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <gsem/error.hpp>
#include <gsem/numerics/summation.hpp>
#include <gsem/sem/generators.hpp>
#include <gsem/sem/identifiability.hpp>
#include <gsem/sem/rng.hpp>

namespace gsem::bench {

std::string_view to_string(ExperimentProtocol protocol) {
    switch (protocol) {
        case ExperimentProtocol::homogeneous: return "homogeneous";
        case ExperimentProtocol::heterogeneous: return "heterogeneous";
        case ExperimentProtocol::nonfaithful: return "nonfaithful";
    }
    return "unknown";
}

std::optional<ExperimentProtocol> parse_experiment_protocol(std::string_view name) {
    if (name == "homogeneous") return ExperimentProtocol::homogeneous;
    if (name == "heterogeneous") return ExperimentProtocol::heterogeneous;
    if (name == "nonfaithful") return ExperimentProtocol::nonfaithful;
    return std::nullopt;
}

std::vector<std::string> ExperimentConfig::violations() const {
    std::vector<std::string> out;
    if (protocol != ExperimentProtocol::nonfaithful && p < 2) out.push_back("p must be at least 2");
    if (n_grid.empty()) out.push_back("n_grid must not be empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2) out.push_back("n_grid[" + std::to_string(i) + "] must be at least 2");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            out.push_back("n_grid must be strictly increasing (entry " + std::to_string(i) + ")");
    }
    if (replications < 1) out.push_back("replications must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) out.push_back("alpha must lie in (0, 1)");
    return out;
}

void ExperimentConfig::validate() const {
    const auto problems = violations();
    if (problems.empty()) return;
    std::string msg = "invalid experiment config: ";
    for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
    throw ValidationError(msg);
}

ExperimentConfig full_scale(ExperimentConfig cfg) {
    cfg.n_grid.clear();
    for (std::size_t n = 100; n <= 1000; n += 100) cfg.n_grid.push_back(n);
    cfg.replications = 100;
    return cfg;
}

std::vector<Aggregate> aggregate(const std::vector<Cell>& cells, const std::vector<std::size_t>& n_grid) {
    std::vector<Aggregate> out;
    for (std::size_t n : n_grid) {
        std::vector<double> hd, mec, secs;
        for (const auto& c : cells) {
            if (c.n != n || c.failed) continue;
            hd.push_back(static_cast<double>(c.hamming_dag));
            mec.push_back(static_cast<double>(c.hamming_cpdag));
            secs.push_back(c.seconds);
        }
        const auto mean = [](const std::vector<double>& xs) {
            return xs.empty() ? 0.0 : numerics::compensated_sum(xs) / static_cast<double>(xs.size());
        };
        const auto se = [&](const std::vector<double>& xs) {
            if (xs.size() < 2) return 0.0;
            const double mu = mean(xs);
            numerics::CompensatedSum ss;
            for (double x : xs) ss.add((x - mu) * (x - mu));
            const double k = static_cast<double>(xs.size());
            return std::sqrt(ss.value() / (k - 1.0)) / std::sqrt(k);
        };
        Aggregate a;
        a.n = n;
        a.count = hd.size();
        a.mean_hd = mean(hd);
        a.se_hd = se(hd);
        a.mean_hd_mec = mean(mec);
        a.se_hd_mec = se(mec);
        a.mean_seconds = mean(secs);
        out.push_back(a);
    }
    return out;
}

namespace {

struct Replication {
    sem::GaussianSem model;
    graph::Cpdag truth_cpdag;
    bool identifiable = false;
    std::string failure;
};

Replication make_replication(const ExperimentConfig& cfg, std::size_t r) {
    const std::uint64_t sem_seed = sem::Rng::derive_seed(cfg.seed, {r, 0});
    sem::GaussianSem model = [&] {
        switch (cfg.protocol) {
            case ExperimentProtocol::homogeneous:
                return sem::random_sem(cfg.p, sem::Protocol::homogeneous, sem_seed);
            case ExperimentProtocol::heterogeneous:
                return sem::random_sem(cfg.p, sem::Protocol::heterogeneous, sem_seed);
            case ExperimentProtocol::nonfaithful: break;
        }
        return sem::nonfaithful_chain();
    }();
    Replication out{model, graph::dag_to_cpdag(model.dag()), false, {}};
    try {
        out.identifiable =
            sem::check_identifiability(model, graph::topological_order(model.dag()), sem::CheckScope::descendants)
                .satisfied;
    } catch (const Error& e) {
        out.failure = std::string("identifiability check: ") + e.what();
    }
    return out;
}

template <class Task>
void parallel_for(std::size_t count, std::size_t threads, const Task& task) {
    if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    };
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t reps = cfg.replications;
    const std::size_t grid = cfg.n_grid.size();

    std::vector<std::optional<Replication>> replications(reps);
    parallel_for(reps, cfg.threads, [&](std::size_t r) { replications[r] = make_replication(cfg, r); });

    learner::LearnConfig lc;
    lc.alpha = cfg.alpha;
    lc.parent_test_mode = cfg.parent_test_mode;

    // Cell index i covers n_grid[i / reps] and replication i % reps, which is
    // already the (n, rep) order of the report.
    std::vector<Cell> cells(grid * reps);
    parallel_for(cells.size(), cfg.threads, [&](std::size_t i) {
        const std::size_t n = cfg.n_grid[i / reps];
        const std::size_t r = i % reps;
        const Replication& rep = *replications[r];
        Cell& cell = cells[i];
        cell.n = n;
        cell.rep = r;
        cell.true_edges = rep.model.dag().edge_count();
        cell.identifiable = rep.identifiable;
        cell.failure = rep.failure;
        try {
            const auto data = sem::sample(rep.model, n, sem::Rng::derive_seed(cfg.seed, {r, 1, n}));
            const auto start = std::chrono::steady_clock::now();
            const auto result = learner::learn(data, lc);
            const auto stop = std::chrono::steady_clock::now();
            if (cfg.record_timing) cell.seconds = std::chrono::duration<double>(stop - start).count();
            cell.hamming_dag = graph::hamming_dag(rep.model.dag(), result.dag);
            cell.hamming_cpdag = graph::hamming_cpdag(rep.truth_cpdag, graph::dag_to_cpdag(result.dag));
        } catch (const Error& e) {
            cell.failed = true;
            cell.failure = std::string(to_string(e.kind())) + ": " + e.what();
        }
    });

    ExperimentReport out;
    out.config = cfg;
    out.aggregates = aggregate(cells, cfg.n_grid);
    out.cells = std::move(cells);
    return out;
}

std::vector<RuntimeRow> measure_runtime(const std::vector<std::size_t>& p_grid,
                                        const std::vector<std::size_t>& n_grid, std::uint64_t seed,
                                        std::size_t replications) {
    std::string problems;
    if (p_grid.empty()) problems += "p_grid must not be empty; ";
    if (n_grid.empty()) problems += "n_grid must not be empty; ";
    for (std::size_t p : p_grid)
        if (p < 2) problems += "every p must be at least 2; ";
    for (std::size_t n : n_grid)
        if (n < 1) problems += "every n must be at least 1; ";
    if (replications < 3) problems += "replications must be at least 3; ";
    if (!problems.empty()) throw ValidationError(problems.substr(0, problems.size() - 2));

    std::vector<RuntimeRow> out;
    for (std::size_t p : p_grid) {
        for (std::size_t n : n_grid) {
            numerics::CompensatedSum total;
            for (std::size_t r = 0; r < replications; ++r) {
                const auto model =
                    sem::random_sem(p, sem::Protocol::homogeneous, sem::Rng::derive_seed(seed, {p, r, 0}));
                const auto data = sem::sample(model, n, sem::Rng::derive_seed(seed, {p, r, 1, n}));
                const auto start = std::chrono::steady_clock::now();
                learner::learn(data, {});
                total.add(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            }
            out.push_back({p, n, replications, total.value() / static_cast<double>(replications)});
        }
    }
    return out;
}

}  // namespace gsem::bench
