#include "gridct/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gridct {

GraphFile parse_graph(std::istream& in) {
    GraphFile out;
    std::string line;
    int n = -1;
    long long m = -1;
    long long seen_edges = 0;
    std::set<Edge> edge_set;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "c") {
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
            out.comments.push_back(rest);
            std::istringstream cs(rest);
            std::string key;
            int value;
            if (cs >> key >> value && key == "k") out.k_hint = value;
        } else if (tag == "p") {
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "graph" || n < 0 || m < 0)
                throw parse_error("line " + std::to_string(lineno) + ": bad problem line");
        } else if (tag == "e") {
            if (n < 0) throw parse_error("edge line before problem line");
            int u, v;
            if (!(ls >> u >> v))
                throw parse_error("line " + std::to_string(lineno) + ": bad edge line");
            if (u < 1 || u > n || v < 1 || v > n)
                throw parse_error("line " + std::to_string(lineno) + ": endpoint out of range");
            if (u == v) throw parse_error("line " + std::to_string(lineno) + ": self-loop");
            Edge e{std::min(u, v), std::max(u, v)};
            if (!edge_set.insert(e).second)
                throw parse_error("line " + std::to_string(lineno) + ": duplicate edge");
            edges.push_back(e);
            ++seen_edges;
        } else {
            throw parse_error("line " + std::to_string(lineno) + ": unknown line type '" + tag +
                              "'");
        }
    }
    if (n < 0) throw parse_error("missing problem line");
    if (seen_edges != m)
        throw parse_error("edge count mismatch: header says " + std::to_string(m) + ", found " +
                          std::to_string(seen_edges));
    out.graph = from_edge_list(n, edges);
    return out;
}

GraphFile parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "c " << c << "\n";
    out << "p graph " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

void write_graph_file(const std::string& path, const Graph& g,
                      const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    write_graph(out, g, comments);
}

}  // namespace gridct
