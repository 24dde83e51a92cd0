#pragma once

#include <filesystem>
#include <iosfwd>

#include "crtmst/graph.hpp"

namespace crtmst {

// `.ssv`: one undirected edge per line, "<src> <dst> <weight>\n", base-10
// unsigned integers separated by single spaces, no header. The vertex count
// is inferred as 1 + the largest id seen.
Graph read_ssv(std::istream& in);
Graph load_ssv(const std::filesystem::path& path);

// Canonical form: every edge once as "min max weight", sorted by (min, max, weight).
void write_ssv(const Graph& g, std::ostream& out);
void save_ssv(const Graph& g, const std::filesystem::path& path);

}  // namespace crtmst
