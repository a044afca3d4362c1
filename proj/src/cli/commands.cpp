#include <gsem/cli/commands.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <gsem/bench/experiment.hpp>
#include <gsem/bench/report.hpp>
#include <gsem/cli/delimited.hpp>
#include <gsem/error.hpp>
#include <gsem/graph/graph_io.hpp>
#include <gsem/learner/learner.hpp>
#include <gsem/learner/result_io.hpp>
#include <gsem/sem/generators.hpp>
#include <gsem/sem/identifiability.hpp>
#include <gsem/sem/rng.hpp>
#include <gsem/sem/sem_io.hpp>
#include <gsem/text_file.hpp>

namespace gsem::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    int verbosity = 0;

    std::uint64_t seed_or_default() const { return seed.value_or(kDefaultSeed); }

    fs::path output_dir() const {
        if (!out_dir.empty()) return out_dir;
        if (const char* env = std::getenv("GSEM_OUTPUT_DIR"); env && *env) return env;
        return ".";
    }
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::numerical_degeneracy:
        case ErrorKind::degenerate_design: return kNumericalError;
        case ErrorKind::io: return kIoError;
        default: return kUsageError;
    }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string margin_text(double m) { return std::isinf(m) ? std::string("none") : format_double(m); }

// learn ---------------------------------------------------------------------

struct LearnArgs {
    std::string input;
    double alpha = 0.01;
    std::string mode = "conditional";
};

int cmd_learn(const LearnArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    learner::LearnConfig cfg;
    cfg.alpha = a.alpha;
    const auto mode = learner::parse_parent_test_mode(a.mode);
    if (!mode) throw ValidationError("--mode must be conditional or marginal, got '" + a.mode + "'");
    cfg.parent_test_mode = *mode;
    cfg.validate();

    const auto data = read_delimited(a.input);
    const auto result = learner::learn(data, cfg);
    const auto& names = data.names();

    const fs::path dir = g.output_dir();
    write_text_file(dir / "result.json", learner::format_result_json(result, names, cfg));
    write_text_file(dir / "graph.txt", graph::format_dag(result.dag));
    write_text_file(dir / "tests.csv", learner::format_test_log_csv(result, names));

    out << "ordering:";
    for (auto v : result.ordering.nodes()) out << ' ' << names[v];
    out << "\nedges (" << result.dag.edge_count() << "):\n";
    for (const auto& [a_, b_] : result.dag.edges()) out << "  " << names[a_] << " -> " << names[b_] << '\n';
    if (g.verbosity > 0) {
        for (std::size_t m = 0; m < result.step_variances.size(); ++m) {
            err << "step " << m + 1 << ':';
            for (const auto& cv : result.step_variances[m]) err << ' ' << names[cv.node] << '=' << cv.variance;
            err << '\n';
        }
        err << "wrote " << (dir / "result.json").string() << ", " << (dir / "graph.txt").string() << ", "
            << (dir / "tests.csv").string() << '\n';
    }
    return kSuccess;
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
    std::string sem_file;
    std::string protocol;
    std::size_t p = 10;
    std::size_t n = 0;
};

int cmd_simulate(const SimulateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    if (a.n < 1) throw ValidationError("--n must be at least 1");
    if (a.sem_file.empty() == a.protocol.empty())
        throw ValidationError("give exactly one of --sem FILE or --protocol NAME");
    const std::uint64_t seed = g.seed_or_default();

    const sem::GaussianSem model = [&] {
        if (!a.sem_file.empty()) return sem::read_sem(a.sem_file);
        if (a.protocol == "nonfaithful") return sem::nonfaithful_chain();
        const auto protocol = sem::parse_protocol(a.protocol);
        if (!protocol)
            throw ValidationError("--protocol must be homogeneous, heterogeneous or nonfaithful, got '" +
                                  a.protocol + "'");
        if (a.p < 2) throw ValidationError("--p must be at least 2");
        return sem::random_sem(a.p, *protocol, sem::Rng::derive_seed(seed, {0}));
    }();

    const auto data = sem::sample(model, a.n, sem::Rng::derive_seed(seed, {1}));
    const auto report =
        sem::check_identifiability(model, graph::topological_order(model.dag()), sem::CheckScope::descendants);

    const fs::path dir = g.output_dir();
    write_text_file(dir / "data.csv", format_delimited(data));
    write_text_file(dir / "sem.json", sem::format_sem(model));

    out << "simulated " << a.n << " samples of " << model.size() << " variables (" << model.dag().edge_count()
        << " edges)\n";
    out << "identifiable: " << yes_no(report.satisfied) << " (worst margin " << margin_text(report.worst_margin)
        << ", " << report.margins.size() << " comparisons)\n";
    if (g.verbosity > 0)
        err << "wrote " << (dir / "data.csv").string() << ", " << (dir / "sem.json").string() << '\n';
    return kSuccess;
}

// check ---------------------------------------------------------------------

struct CheckArgs {
    std::string sem_file;
    std::string scope = "descendants";
    std::vector<std::size_t> ordering;
};

int cmd_check(const CheckArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    sem::CheckScope scope;
    if (a.scope == "descendants")
        scope = sem::CheckScope::descendants;
    else if (a.scope == "all_later")
        scope = sem::CheckScope::all_later;
    else
        throw ValidationError("--scope must be descendants or all_later, got '" + a.scope + "'");

    const auto model = sem::read_sem(a.sem_file);
    const graph::Ordering ordering =
        a.ordering.empty() ? graph::topological_order(model.dag()) : graph::Ordering(a.ordering);
    const auto report = sem::check_identifiability(model, ordering, scope);

    const fs::path dir = g.output_dir();
    write_text_file(dir / "report.json", sem::format_report(report));
    out << "satisfied: " << yes_no(report.satisfied) << " (worst margin " << margin_text(report.worst_margin)
        << ", " << report.margins.size() << " comparisons)\n";
    if (g.verbosity > 0) {
        for (const auto& m : report.margins)
            err << "  sigma2[" << m.j << "] = " << m.lhs << " vs Var(X" << m.k << " | before) = " << m.rhs << '\n';
    }
    return report.satisfied ? kSuccess : kCheckFailed;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
    std::string config_file;
    bool full = false;
    std::optional<std::size_t> replications;
    std::optional<std::size_t> threads;
    std::optional<std::size_t> p;
    std::string protocol;
    bool timing = false;
};

int cmd_bench(const BenchArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    bench::ExperimentConfig cfg;
    if (!a.config_file.empty()) cfg = bench::parse_experiment_config(read_text_file(a.config_file));
    if (!a.protocol.empty()) {
        const auto protocol = bench::parse_experiment_protocol(a.protocol);
        if (!protocol)
            throw ValidationError("--protocol must be homogeneous, heterogeneous or nonfaithful, got '" +
                                  a.protocol + "'");
        cfg.protocol = *protocol;
    }
    if (a.full) cfg = bench::full_scale(cfg);
    if (a.p) cfg.p = *a.p;
    if (a.replications) cfg.replications = *a.replications;
    if (a.threads) cfg.threads = *a.threads;
    if (a.timing) cfg.record_timing = true;
    if (g.seed) cfg.seed = *g.seed;
    cfg.validate();

    const auto report = bench::run_experiment(cfg);
    const fs::path dir = g.output_dir();
    bench::emit_report(report, dir);

    out << to_string(cfg.protocol) << ", p = " << cfg.nodes() << ", " << cfg.replications << " replications\n";
    out << std::setw(8) << "n" << std::setw(12) << "mean_hd" << std::setw(10) << "se_hd" << std::setw(13)
        << "mean_hd_mec" << std::setw(11) << "se_hd_mec" << std::setw(8) << "done\n";
    for (const auto& ag : report.aggregates) {
        out << std::setw(8) << ag.n << std::fixed << std::setprecision(3) << std::setw(12) << ag.mean_hd
            << std::setw(10) << ag.se_hd << std::setw(13) << ag.mean_hd_mec << std::setw(11) << ag.se_hd_mec
            << std::setw(7) << ag.count << '\n';
    }
    out.unsetf(std::ios::floatfield);
    std::size_t failures = 0;
    for (const auto& c : report.cells) failures += c.failed ? 1 : 0;
    if (failures) err << failures << " cell(s) failed; see cells.csv\n";
    if (g.verbosity > 0) err << "wrote report files to " << dir.string() << '\n';
    return kSuccess;
}

// cpdag ---------------------------------------------------------------------

int cmd_cpdag(const std::string& graph_file, const Globals& g, std::ostream& out, std::ostream& err) {
    const auto cpdag = graph::dag_to_cpdag(graph::read_dag(graph_file));
    const std::string text = graph::format_cpdag(cpdag);
    const fs::path dir = g.output_dir();
    write_text_file(dir / "cpdag.txt", text);
    out << text;
    if (g.verbosity > 0) err << "wrote " << (dir / "cpdag.txt").string() << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Causal structure learning for Gaussian structural equation models", "gsem"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Base random seed (default 1)");
    app.add_option("-o,--out", g.out_dir, "Output directory (default $GSEM_OUTPUT_DIR or .)");
    app.add_flag("-v,--verbose", g.verbosity, "More diagnostics on standard error (repeatable)");

    LearnArgs learn_args;
    auto* learn = app.add_subcommand("learn", "Estimate a DAG from a delimited data file");
    learn->add_option("input", learn_args.input, "Data file with a header row")->required();
    learn->add_option("--alpha", learn_args.alpha, "Significance level of the parent tests")->capture_default_str();
    learn->add_option("--mode", learn_args.mode, "Parent test: conditional or marginal")->capture_default_str();

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Sample a dataset from a SEM file or a random protocol");
    simulate->add_option("--sem", sim_args.sem_file, "SEM document (JSON)");
    simulate->add_option("--protocol", sim_args.protocol, "homogeneous, heterogeneous or nonfaithful");
    simulate->add_option("--p", sim_args.p, "Number of variables for random protocols")->capture_default_str();
    simulate->add_option("--n", sim_args.n, "Number of samples")->required();

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Check the identifiability condition of a SEM");
    check->add_option("sem", check_args.sem_file, "SEM document (JSON)")->required();
    check->add_option("--scope", check_args.scope, "descendants or all_later")->capture_default_str();
    check->add_option("--ordering", check_args.ordering, "Causal ordering (default: a topological order)")
        ->delimiter(',');

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Run a replicated simulation experiment");
    bench_cmd->add_option("config", bench_args.config_file, "Experiment config (JSON); defaults if omitted");
    bench_cmd->add_flag("--full", bench_args.full, "Use n = 100..1000 step 100 with 100 replications");
    bench_cmd->add_option("--replications", bench_args.replications, "Override the replication count");
    bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (0 = all cores)");
    bench_cmd->add_option("--p", bench_args.p, "Override the number of variables");
    bench_cmd->add_option("--protocol", bench_args.protocol, "Override the protocol");
    bench_cmd->add_flag("--timing", bench_args.timing, "Record learn wall-clock time per cell");

    std::string graph_file;
    auto* cpdag = app.add_subcommand("cpdag", "Convert a DAG file to its CPDAG");
    cpdag->add_option("graph", graph_file, "Graph file")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }
    if (*seed_opt) g.seed = seed_value;

    try {
        if (learn->parsed()) return cmd_learn(learn_args, g, out, err);
        if (simulate->parsed()) return cmd_simulate(sim_args, g, out, err);
        if (check->parsed()) return cmd_check(check_args, g, out, err);
        if (bench_cmd->parsed()) return cmd_bench(bench_args, g, out, err);
        if (cpdag->parsed()) return cmd_cpdag(graph_file, g, out, err);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kUsageError;
}

}  // namespace gsem::cli
