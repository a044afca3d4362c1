#include <gsem/cli/delimited.hpp>

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include <gsem/error.hpp>
#include <gsem/text_file.hpp>

namespace gsem::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, bool comma) {
    std::vector<std::string_view> out;
    if (comma) {
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(',', start);
            out.push_back(trim(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start)));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            if (i >= line.size()) break;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
        s = s.substr(1, s.size() - 2);
    return std::string(s);
}

bool is_missing(std::string_view cell) {
    return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan" || cell == "?" ||
           cell == "null";
}

}  // namespace

numerics::Dataset parse_delimited(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        const auto line = text.substr(start, pos == std::string_view::npos ? text.npos : pos - start);
        ++number;
        if (!trim(line).empty()) lines.emplace_back(number, line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (lines.empty()) throw ParseError("empty input: a header row of variable names is required");

    const auto [header_line, header_text] = lines.front();
    const bool comma = header_text.find(',') != std::string_view::npos;
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (auto field : split(header_text, comma)) {
        std::string name = unquote(field);
        if (name.empty()) throw ParseError("line " + std::to_string(header_line) + ": empty variable name");
        if (!seen.insert(name).second)
            throw ParseError("line " + std::to_string(header_line) + ": duplicate variable name '" + name + "'");
        names.push_back(std::move(name));
    }
    const std::size_t p = names.size();
    if (lines.size() == 1) throw ValidationError("empty dataset: the header has no data rows");

    std::vector<double> values;
    values.reserve((lines.size() - 1) * p);
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto [line_no, line] = lines[row];
        const auto cells = split(line, comma);
        const std::string where = "line " + std::to_string(line_no);
        if (cells.size() != p)
            throw ParseError(where + ": expected " + std::to_string(p) + " fields, found " +
                             std::to_string(cells.size()));
        for (std::size_t j = 0; j < p; ++j) {
            const auto cell = cells[j];
            if (is_missing(cell))
                throw ParseError(where + ", column '" + names[j] + "': missing value (imputation is not supported)");
            double x = 0.0;
            const char* first = cell.data();
            const char* last = first + cell.size();
            if (*first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, last, x);
            if (ec != std::errc() || ptr != last)
                throw ParseError(where + ", column '" + names[j] + "': '" + std::string(cell) + "' is not a number");
            if (!std::isfinite(x))
                throw ParseError(where + ", column '" + names[j] + "': non-finite value '" + std::string(cell) + "'");
            values.push_back(x);
        }
    }
    return numerics::Dataset(std::move(names), numerics::Matrix(lines.size() - 1, p, std::move(values)));
}

numerics::Dataset read_delimited(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_delimited(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string format_delimited(const numerics::Dataset& data) {
    std::ostringstream out;
    const auto& names = data.names();
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    out << '\n';
    const auto& m = data.data();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
        out << '\n';
    }
    return out.str();
}

}  // namespace gsem::cli
