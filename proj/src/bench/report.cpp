#include <gsem/bench/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include <gsem/error.hpp>
#include <gsem/text_file.hpp>

namespace gsem::bench {

using nlohmann::json;

namespace {

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

}  // namespace

std::string format_cells_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "protocol,p,n,rep,hamming_dag,hamming_cpdag,seconds,identifiable,failed\n";
    const auto protocol = to_string(rep.config.protocol);
    const std::size_t p = rep.config.nodes();
    for (const auto& c : rep.cells) {
        out << protocol << ',' << p << ',' << c.n << ',' << c.rep << ',' << c.hamming_dag << ',' << c.hamming_cpdag
            << ',' << format_double(c.seconds) << ',' << (c.identifiable ? "true" : "false") << ','
            << (c.failed ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string format_aggregate_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "protocol,p,n,mean_hd,se_hd,mean_hd_mec,se_hd_mec,mean_seconds\n";
    const auto protocol = to_string(rep.config.protocol);
    const std::size_t p = rep.config.nodes();
    for (const auto& a : rep.aggregates) {
        out << protocol << ',' << p << ',' << a.n << ',' << format_double(a.mean_hd) << ','
            << format_double(a.se_hd) << ',' << format_double(a.mean_hd_mec) << ',' << format_double(a.se_hd_mec)
            << ',' << format_double(a.mean_seconds) << '\n';
    }
    return out.str();
}

std::string format_chart_svg(const ExperimentReport& rep) {
    constexpr double width = 640, height = 400;
    constexpr double left = 70, right = 150, top = 40, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const auto& aggs = rep.aggregates;
    double n_lo = aggs.empty() ? 0.0 : static_cast<double>(aggs.front().n);
    double n_hi = aggs.empty() ? 1.0 : static_cast<double>(aggs.back().n);
    if (n_hi <= n_lo) n_hi = n_lo + 1.0;
    double y_hi = 0.0;
    for (const auto& a : aggs) y_hi = std::max({y_hi, a.mean_hd, a.mean_hd_mec});
    y_hi = y_hi > 0.0 ? y_hi * 1.1 : 1.0;

    const auto sx = [&](double n) { return left + (n - n_lo) / (n_hi - n_lo) * plot_w; };
    const auto sy = [&](double v) { return top + plot_h - v / y_hi * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << to_string(rep.config.protocol) << ", p = " << rep.config.nodes() << ", " << rep.config.replications
        << " replications</text>\n";

    // axes
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";
    for (const auto& a : aggs) {
        const double x = sx(static_cast<double>(a.n));
        out << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fixed(x, 2)
            << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fixed(x, 2) << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">"
            << a.n << "</text>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double v = y_hi * t / 4.0;
        const double y = sy(v);
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(y, 2) << "\" x2=\"" << left << "\" y2=\""
            << fixed(y, 2) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4, 2) << "\" text-anchor=\"end\">" << fixed(v, 2)
            << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">n</text>\n";
    out << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << top + plot_h / 2 << ")\">mean Hamming distance</text>\n";

    struct Series {
        const char* label;
        const char* colour;
        double Aggregate::*value;
    };
    const Series series[] = {{"DAG", "#1f77b4", &Aggregate::mean_hd}, {"CPDAG", "#d62728", &Aggregate::mean_hd_mec}};
    int row = 0;
    for (const auto& s : series) {
        std::string points;
        for (const auto& a : aggs) {
            if (!points.empty()) points += ' ';
            points += fixed(sx(static_cast<double>(a.n)), 2) + "," + fixed(sy(a.*s.value), 2);
        }
        out << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"2\" points=\"" << points
            << "\"/>\n";
        for (const auto& a : aggs)
            out << "<circle cx=\"" << fixed(sx(static_cast<double>(a.n)), 2) << "\" cy=\""
                << fixed(sy(a.*s.value), 2) << "\" r=\"3\" fill=\"" << s.colour << "\"/>\n";
        const double ly = top + 10 + 20 * row++;
        out << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 40
            << "\" y2=\"" << ly << "\" stroke=\"" << s.colour << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + plot_w + 45 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void emit_report(const ExperimentReport& rep, const std::filesystem::path& dir) {
    write_text_file(dir / "cells.csv", format_cells_csv(rep));
    write_text_file(dir / "aggregate.csv", format_aggregate_csv(rep));
    write_text_file(dir / "chart.svg", format_chart_svg(rep));
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("experiment config must be a JSON object");

    ExperimentConfig cfg;
    std::vector<std::string> problems;
    const auto count = [&](const char* key, std::size_t& target) {
        if (!doc.contains(key)) return;
        const auto& v = doc[key];
        if (v.is_number_unsigned())
            target = v.get<std::size_t>();
        else if (v.is_number_integer())
            problems.push_back(std::string(key) + " must not be negative");
        else
            problems.push_back(std::string(key) + " must be a non-negative integer");
    };
    for (const auto& [key, value] : doc.items()) {
        static const char* known[] = {"protocol", "p",     "n_grid",  "replications",  "seed",
                                      "alpha",    "parent_test_mode", "threads", "record_timing"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known))
            problems.push_back("unknown key '" + key + "'");
    }
    if (doc.contains("protocol")) {
        const auto parsed = doc["protocol"].is_string()
                                ? parse_experiment_protocol(doc["protocol"].get<std::string>())
                                : std::nullopt;
        if (parsed)
            cfg.protocol = *parsed;
        else
            problems.push_back("protocol must be one of homogeneous, heterogeneous, nonfaithful");
    }
    count("p", cfg.p);
    count("replications", cfg.replications);
    count("threads", cfg.threads);
    if (doc.contains("seed")) {
        if (doc["seed"].is_number_unsigned())
            cfg.seed = doc["seed"].get<std::uint64_t>();
        else
            problems.push_back("seed must be a non-negative integer");
    }
    if (doc.contains("n_grid")) {
        const auto& v = doc["n_grid"];
        cfg.n_grid.clear();
        if (!v.is_array()) {
            problems.push_back("n_grid must be an array of sample sizes");
        } else {
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i].is_number_unsigned())
                    cfg.n_grid.push_back(v[i].get<std::size_t>());
                else
                    problems.push_back("n_grid[" + std::to_string(i) + "] must be a non-negative integer");
            }
        }
    }
    if (doc.contains("alpha")) {
        if (doc["alpha"].is_number())
            cfg.alpha = doc["alpha"].get<double>();
        else
            problems.push_back("alpha must be a number");
    }
    if (doc.contains("parent_test_mode")) {
        const auto parsed = doc["parent_test_mode"].is_string()
                                ? learner::parse_parent_test_mode(doc["parent_test_mode"].get<std::string>())
                                : std::nullopt;
        if (parsed)
            cfg.parent_test_mode = *parsed;
        else
            problems.push_back("parent_test_mode must be conditional or marginal");
    }
    if (doc.contains("record_timing")) {
        if (doc["record_timing"].is_boolean())
            cfg.record_timing = doc["record_timing"].get<bool>();
        else
            problems.push_back("record_timing must be true or false");
    }
    for (auto& v : cfg.violations()) problems.push_back(std::move(v));
    if (!problems.empty()) {
        std::string msg = "invalid experiment config: ";
        for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
        throw ValidationError(msg);
    }
    return cfg;
}

std::string format_experiment_config(const ExperimentConfig& cfg) {
    json doc;
    doc["protocol"] = std::string(to_string(cfg.protocol));
    doc["p"] = cfg.p;
    doc["n_grid"] = cfg.n_grid;
    doc["replications"] = cfg.replications;
    doc["seed"] = cfg.seed;
    doc["alpha"] = cfg.alpha;
    doc["parent_test_mode"] = std::string(learner::to_string(cfg.parent_test_mode));
    doc["threads"] = cfg.threads;
    doc["record_timing"] = cfg.record_timing;
    return doc.dump(2) + "\n";
}

}  // namespace gsem::bench
