#ifndef GSEM_GRAPH_GRAPH_IO_HPP
#define GSEM_GRAPH_GRAPH_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <gsem/graph/dag.hpp>

namespace gsem::graph {

// Text format: first line is the node count p, then one edge per line as
// "parent child" with 0-based indices. CPDAG undirected edges carry a
// trailing "u" and are written "low high u". Writers emit edges sorted by
// node pair, so format(parse(text)) == text for canonical input.

std::string format_dag(const Dag& g);
Dag parse_dag(std::string_view text);

std::string format_cpdag(const Cpdag& g);
Cpdag parse_cpdag(std::string_view text);

Dag read_dag(const std::filesystem::path& path);
Cpdag read_cpdag(const std::filesystem::path& path);

}  // namespace gsem::graph

#endif  // GSEM_GRAPH_GRAPH_IO_HPP
