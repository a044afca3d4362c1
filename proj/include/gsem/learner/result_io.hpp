#ifndef GSEM_LEARNER_RESULT_IO_HPP
#define GSEM_LEARNER_RESULT_IO_HPP

#include <string>
#include <vector>

#include <gsem/learner/learner.hpp>

namespace gsem::learner {

/// JSON document: variable names, ordering (indices and names), the DAG in
/// the graph text format, named edges, and per-step conditional variances.
std::string format_result_json(const LearnResult& result, const std::vector<std::string>& names,
                               const LearnConfig& cfg);

/// CSV with header
/// child,candidate,conditioning,partial_correlation,statistic,threshold,decision
/// where conditioning is a ';'-separated list of variable names.
std::string format_test_log_csv(const LearnResult& result, const std::vector<std::string>& names);

}  // namespace gsem::learner

#endif  // GSEM_LEARNER_RESULT_IO_HPP
