#ifndef GSEM_TEXT_FILE_HPP
#define GSEM_TEXT_FILE_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace gsem {

/// Whole-file read; throws IoError naming the path.
std::string read_text_file(const std::filesystem::path& path);

/// Creates missing parent directories, then writes `contents` verbatim.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// %.17g rendering, enough digits for an exact double round-trip.
std::string format_double(double value);

}  // namespace gsem

#endif  // GSEM_TEXT_FILE_HPP
