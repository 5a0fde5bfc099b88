#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridct/errors.hpp"

namespace gridct {

// Sorted, duplicate-free list of 1-based vertex identifiers. The sorted
// sequence is the canonical encoding used for hashing and equality.
using VertexSet = std::vector<int>;
using Edge = std::pair<int, int>;

bool vs_contains(const VertexSet& s, int v);
VertexSet vs_union(const VertexSet& a, const VertexSet& b);
VertexSet vs_difference(const VertexSet& a, const VertexSet& b);
VertexSet vs_intersection(const VertexSet& a, const VertexSet& b);
bool vs_disjoint(const VertexSet& a, const VertexSet& b);
void vs_insert(VertexSet& s, int v);
bool vs_is_canonical(const VertexSet& s);

// Immutable simple undirected graph on vertices 1..n. Construction
// validates and normalizes the edge list; afterwards the graph is
// value-semantic and safe to share across threads.
class Graph {
  public:
    Graph() = default;

    int vertex_count() const { return n_; }
    long long edge_count() const { return m_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    bool is_connected() const;
    std::vector<Edge> edges() const;  // normalized u < v, sorted

  private:
    friend Graph from_edge_list(int n, const std::vector<Edge>& edges);
    int n_ = 0;
    long long m_ = 0;
    std::vector<std::vector<int>> adj_;  // 1-based, each list sorted
};

Graph from_edge_list(int n, const std::vector<Edge>& edges);

// Vertex -> (row, col) assignment certifying a grid contraction.
struct WitnessMap {
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<int, int>> cell;  // 1-based by vertex, (0,0) unassigned

    void resize(int n) { cell.assign(n + 1, {0, 0}); }
    bool assigned(int v) const { return cell[v].first != 0; }
    int contraction_cost(int n) const { return n - rows * cols; }
};

struct Corners {
    int x1 = 0, x2 = 0, x3 = 0, x4 = 0;
    bool distinct() const;
    std::vector<int> as_vector() const { return {x1, x2, x3, x4}; }
};

// Contracts every connected component of (V(F), F) to a single vertex.
// Vertices of the result are renumbered densely in order of the smallest
// original member; the returned map sends old vertices to new ones.
std::pair<Graph, std::vector<int>> contract_edges(const Graph& g, const std::vector<Edge>& f);

// Connected components of G - excluded, each sorted, ordered by smallest member.
std::vector<VertexSet> components(const Graph& g, const VertexSet& excluded = {});

// Vertices of S with a neighbor outside S.
VertexSet boundary(const Graph& g, const VertexSet& s);
// N(S): vertices outside S adjacent to S.
VertexSet neighborhood(const Graph& g, const VertexSet& s);

// The r x q grid; vertex (i, j) gets identifier (i-1)*q + j.
Graph build_grid(int r, int q);

// Grid recognition for connected graphs. Returns singleton-cell coordinates
// with rows <= cols, choosing the lexicographically smallest assignment over
// the grid automorphisms; empty if g is not a grid (paths count as 1 x q).
std::optional<WitnessMap> recognize_grid(const Graph& g);

// The unique shortest u-v path, or empty when there are zero or several.
std::optional<std::vector<int>> unique_shortest_path(const Graph& g, int u, int v);

// BFS distances from src; -1 for unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, int src);

bool induces_connected(const Graph& g, const VertexSet& s);

}  // namespace gridct
