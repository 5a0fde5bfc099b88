#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gridct/graph.hpp"

namespace gridct {

// Graph text format:
//   c <comment>
//   p graph <n> <m>
//   e <u> <v>        (1-based, any order)
// Duplicate or self-loop edge lines are errors. A comment of the form
// `c k <int>` carries the instance parameter for benchmarking.
struct GraphFile {
    Graph graph;
    std::optional<int> k_hint;
    std::vector<std::string> comments;
};

GraphFile parse_graph(std::istream& in);
GraphFile parse_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g,
                 const std::vector<std::string>& comments = {});
void write_graph_file(const std::string& path, const Graph& g,
                      const std::vector<std::string>& comments = {});

}  // namespace gridct
