#ifndef GSEM_BENCH_REPORT_HPP
#define GSEM_BENCH_REPORT_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <gsem/bench/experiment.hpp>

namespace gsem::bench {

std::string format_cells_csv(const ExperimentReport& rep);
std::string format_aggregate_csv(const ExperimentReport& rep);
/// Line chart of mean Hamming distance (DAG and CPDAG) against n.
std::string format_chart_svg(const ExperimentReport& rep);

/// Writes cells.csv, aggregate.csv and chart.svg into `dir`.
void emit_report(const ExperimentReport& rep, const std::filesystem::path& dir);

/// Config document with keys protocol, p, n_grid, replications, seed, alpha,
/// parent_test_mode, threads and record_timing; absent keys keep their
/// defaults. Throws ValidationError naming every problem at once.
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string format_experiment_config(const ExperimentConfig& cfg);

}  // namespace gsem::bench

#endif  // GSEM_BENCH_REPORT_HPP
