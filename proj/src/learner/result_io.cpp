#include <gsem/learner/result_io.hpp>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include <gsem/graph/graph_io.hpp>
#include <gsem/text_file.hpp>

namespace gsem::learner {

using nlohmann::json;

std::string format_result_json(const LearnResult& result, const std::vector<std::string>& names,
                               const LearnConfig& cfg) {
    json doc;
    doc["variables"] = names;
    doc["alpha"] = cfg.alpha;
    doc["parent_test_mode"] = std::string(to_string(cfg.parent_test_mode));
    doc["ordering"] = result.ordering.nodes();
    json ordered_names = json::array();
    for (Node v : result.ordering.nodes()) ordered_names.push_back(names.at(v));
    doc["ordering_names"] = std::move(ordered_names);
    doc["graph"] = graph::format_dag(result.dag);
    json edges = json::array();
    for (const auto& [a, b] : result.dag.edges()) edges.push_back({{"parent", names.at(a)}, {"child", names.at(b)}});
    doc["edges"] = std::move(edges);
    json steps = json::array();
    for (const auto& step : result.step_variances) {
        json row = json::array();
        for (const auto& cv : step) row.push_back({{"node", names.at(cv.node)}, {"variance", cv.variance}});
        steps.push_back(std::move(row));
    }
    doc["step_variances"] = std::move(steps);
    return doc.dump(2) + "\n";
}

std::string format_test_log_csv(const LearnResult& result, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "child,candidate,conditioning,partial_correlation,statistic,threshold,decision\n";
    for (const auto& rec : result.test_log) {
        out << names.at(rec.child) << ',' << names.at(rec.candidate) << ',';
        for (std::size_t i = 0; i < rec.conditioning.size(); ++i)
            out << (i ? ";" : "") << names.at(rec.conditioning[i]);
        out << ',' << format_double(rec.partial_correlation) << ','
            << (std::isinf(rec.statistic) ? std::string("inf") : format_double(rec.statistic)) << ','
            << format_double(rec.threshold) << ',' << (rec.dependent ? "dependent" : "independent") << '\n';
    }
    return out.str();
}

}  // namespace gsem::learner
