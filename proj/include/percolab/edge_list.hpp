#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

// Edge-list text format: one edge per line as two whitespace-separated
// non-negative decimal ids; '#' starts a comment; an optional header
// "# n=<N>" declares the vertex count (otherwise n = max id + 1).
//
// Saving writes the header, then any extra comment lines, then edges with
// u < v sorted by (u, v).

Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out, const std::vector<std::string>& comments = {});

/// Throws IoError, ParseError (with line number) or NonSimple.
Graph load_edge_list(const std::filesystem::path& path);
void save_edge_list(const Graph& g, const std::filesystem::path& path, const std::vector<std::string>& comments = {});

}  // namespace percolab
