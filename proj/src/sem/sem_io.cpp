#include <gsem/sem/sem_io.hpp>

#include <cmath>

#include <json.hpp>

#include <gsem/error.hpp>
#include <gsem/text_file.hpp>

namespace gsem::sem {

using nlohmann::json;

std::string format_sem(const GaussianSem& m) {
    json doc;
    doc["p"] = m.size();
    json edges = json::array();
    for (Node j = 0; j < m.size(); ++j)
        for (Node k = 0; k < m.size(); ++k)
            if (m.weight(j, k) != 0.0) edges.push_back({{"j", j}, {"k", k}, {"beta", m.weight(j, k)}});
    doc["edges"] = std::move(edges);
    doc["sigma2"] = m.sigma2();
    doc["intercepts"] = m.intercepts();
    return doc.dump(2) + "\n";
}

namespace {

const json& require(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("SEM document is missing field '") + key + "'");
    return doc.at(key);
}

std::vector<double> number_array(const json& value, const char* key, std::size_t p) {
    if (!value.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
    if (value.size() != p)
        throw ParseError(std::string("field '") + key + "' has " + std::to_string(value.size()) +
                         " entries, expected p = " + std::to_string(p));
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number())
            throw ParseError(std::string("field '") + key + "[" + std::to_string(i) + "]' is not a number");
        out.push_back(value[i].get<double>());
    }
    return out;
}

}  // namespace

GaussianSem parse_sem(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed SEM document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("SEM document must be a JSON object");

    const json& pj = require(doc, "p");
    if (!pj.is_number_unsigned()) throw ParseError("field 'p' must be a non-negative integer");
    const std::size_t p = pj.get<std::size_t>();

    Matrix weights(p, p);
    const json& edges = require(doc, "edges");
    if (!edges.is_array()) throw ParseError("field 'edges' must be an array");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const json& edge = edges[e];
        const std::string where = "edges[" + std::to_string(e) + "]";
        if (!edge.is_object() || !edge.contains("j") || !edge.contains("k") || !edge.contains("beta"))
            throw ParseError(where + " must be an object with fields j, k, beta");
        if (!edge["j"].is_number_unsigned() || !edge["k"].is_number_unsigned() || !edge["beta"].is_number())
            throw ParseError(where + " has a field of the wrong type");
        const auto j = edge["j"].get<std::size_t>();
        const auto k = edge["k"].get<std::size_t>();
        const double beta = edge["beta"].get<double>();
        if (j >= p || k >= p) throw ParseError(where + " references a node outside [0, p)");
        if (beta == 0.0) throw ParseError(where + " has a zero weight; omit absent edges instead");
        if (weights(j, k) != 0.0) throw ParseError(where + " repeats an edge");
        weights(j, k) = beta;
    }
    std::vector<double> sigma2 = number_array(require(doc, "sigma2"), "sigma2", p);
    std::vector<double> intercepts;
    if (doc.contains("intercepts")) intercepts = number_array(doc["intercepts"], "intercepts", p);

    try {
        return GaussianSem(std::move(weights), std::move(sigma2), std::move(intercepts));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid SEM: ") + e.what());
    } catch (const DimensionError& e) {
        throw ParseError(std::string("invalid SEM: ") + e.what());
    }
}

GaussianSem read_sem(const std::filesystem::path& path) {
    try {
        return parse_sem(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string format_report(const IdentifiabilityReport& report) {
    json doc;
    doc["satisfied"] = report.satisfied;
    doc["scope"] = report.scope == CheckScope::descendants ? "descendants" : "all-later";
    doc["worst_margin"] = std::isfinite(report.worst_margin) ? json(report.worst_margin) : json(nullptr);
    json margins = json::array();
    for (const auto& m : report.margins)
        margins.push_back({{"j", m.j},
                           {"k", m.k},
                           {"lhs", m.lhs},
                           {"rhs", m.rhs},
                           {"decomposed_rhs", m.decomposed_rhs},
                           {"margin", m.margin()},
                           {"holds", m.lhs < m.rhs}});
    doc["margins"] = std::move(margins);
    return doc.dump(2) + "\n";
}

}  // namespace gsem::sem
