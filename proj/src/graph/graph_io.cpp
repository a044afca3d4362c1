#include <gsem/graph/graph_io.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

#include <gsem/error.hpp>
#include <gsem/text_file.hpp>

namespace gsem::graph {

namespace {

struct ParsedLine {
    std::size_t number;
    std::vector<std::string_view> fields;
};

std::vector<ParsedLine> tokenize(std::string_view text) {
    std::vector<ParsedLine> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        ParsedLine parsed{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) parsed.fields.push_back(line.substr(start, i - start));
        }
        if (!parsed.fields.empty()) lines.push_back(std::move(parsed));
    }
    return lines;
}

std::size_t parse_index(std::string_view field, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line) + ": expected a non-negative integer, got '" +
                         std::string(field) + "'");
    return value;
}

struct RawGraph {
    std::size_t p = 0;
    std::vector<Edge> directed;
    std::vector<Edge> undirected;
};

RawGraph parse_raw(std::string_view text, bool allow_undirected) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError("graph file is empty; expected the node count on the first line");
    if (lines.front().fields.size() != 1)
        throw ParseError("line " + std::to_string(lines.front().number) + ": expected a single node count");
    RawGraph raw;
    raw.p = parse_index(lines.front().fields.front(), lines.front().number);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [number, fields] = lines[i];
        const bool undirected = fields.size() == 3 && fields[2] == "u";
        if (fields.size() != 2 && !undirected)
            throw ParseError("line " + std::to_string(number) + ": expected 'parent child'" +
                             (allow_undirected ? " or 'a b u'" : ""));
        if (undirected && !allow_undirected)
            throw ParseError("line " + std::to_string(number) + ": undirected edge in a DAG file");
        Edge e{parse_index(fields[0], number), parse_index(fields[1], number)};
        if (e.first >= raw.p || e.second >= raw.p)
            throw ParseError("line " + std::to_string(number) + ": node index out of range for p = " +
                             std::to_string(raw.p));
        (undirected ? raw.undirected : raw.directed).push_back(e);
    }
    return raw;
}

template <typename Fn>
auto rethrow_as_parse(Fn&& fn) {
    try {
        return fn();
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid graph: ") + e.what());
    }
}

}  // namespace

std::string format_dag(const Dag& g) {
    std::ostringstream out;
    out << g.size() << '\n';
    for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
    return out.str();
}

Dag parse_dag(std::string_view text) {
    RawGraph raw = parse_raw(text, false);
    return rethrow_as_parse([&] { return Dag(raw.p, std::move(raw.directed)); });
}

std::string format_cpdag(const Cpdag& g) {
    struct Line {
        Edge pair;
        bool undirected;
    };
    std::vector<Line> lines;
    for (const auto& e : g.directed()) lines.push_back({e, false});
    for (const auto& e : g.undirected()) lines.push_back({e, true});
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
        const Edge kx{std::min(x.pair.first, x.pair.second), std::max(x.pair.first, x.pair.second)};
        const Edge ky{std::min(y.pair.first, y.pair.second), std::max(y.pair.first, y.pair.second)};
        return kx < ky;
    });
    std::ostringstream out;
    out << g.size() << '\n';
    for (const auto& l : lines) out << l.pair.first << ' ' << l.pair.second << (l.undirected ? " u\n" : "\n");
    return out.str();
}

Cpdag parse_cpdag(std::string_view text) {
    RawGraph raw = parse_raw(text, true);
    return rethrow_as_parse([&] { return Cpdag(raw.p, std::move(raw.directed), std::move(raw.undirected)); });
}

Dag read_dag(const std::filesystem::path& path) {
    try {
        return parse_dag(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Cpdag read_cpdag(const std::filesystem::path& path) {
    try {
        return parse_cpdag(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace gsem::graph
