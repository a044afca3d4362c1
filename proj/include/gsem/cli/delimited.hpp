#ifndef GSEM_CLI_DELIMITED_HPP
#define GSEM_CLI_DELIMITED_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <gsem/numerics/dataset.hpp>

namespace gsem::cli {

/// Parses a table whose first line holds the variable names. The delimiter
/// is a comma if the header contains one, otherwise any run of whitespace.
/// Blank lines are skipped. Wrong arity, non-numeric cells and missing values
/// (empty, NA, NaN, ?) raise ParseError naming the 1-based line; a header
/// with no data rows raises ValidationError.
numerics::Dataset parse_delimited(std::string_view text);
numerics::Dataset read_delimited(const std::filesystem::path& path);

/// Comma-separated with a header row and 17 significant digits, so that
/// parse_delimited(format_delimited(d)) == d.
std::string format_delimited(const numerics::Dataset& data);

}  // namespace gsem::cli

#endif  // GSEM_CLI_DELIMITED_HPP
