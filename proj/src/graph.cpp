#include "gridct/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <set>

namespace gridct {

bool vs_contains(const VertexSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

VertexSet vs_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet vs_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet vs_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool vs_disjoint(const VertexSet& a, const VertexSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return false;
        if (*ia < *ib)
            ++ia;
        else
            ++ib;
    }
    return true;
}

void vs_insert(VertexSet& s, int v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

bool vs_is_canonical(const VertexSet& s) {
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 1 || u > n_ || v < 1 || v > n_) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    auto dist = bfs_distances(*this, 1);
    for (int v = 1; v <= n_; ++v)
        if (dist[v] < 0) return false;
    return true;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<size_t>(m_));
    for (int u = 1; u <= n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph from_edge_list(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw validation_error("vertex count must be nonnegative");
    std::set<Edge> norm;
    for (auto [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw validation_error("edge endpoint out of range: " + std::to_string(u) + " " +
                                   std::to_string(v));
        if (u == v) throw validation_error("self-loop at vertex " + std::to_string(u));
        norm.insert({std::min(u, v), std::max(u, v)});
    }
    Graph g;
    g.n_ = n;
    g.m_ = static_cast<long long>(norm.size());
    g.adj_.assign(n + 1, {});
    for (auto [u, v] : norm) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& a : g.adj_) std::sort(a.begin(), a.end());
    return g;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n + 1) {
        for (int i = 0; i <= n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::pair<Graph, std::vector<int>> contract_edges(const Graph& g, const std::vector<Edge>& f) {
    const int n = g.vertex_count();
    UnionFind uf(n);
    for (auto [u, v] : f) {
        if (!g.has_edge(u, v))
            throw validation_error("contraction set contains non-edge " + std::to_string(u) + " " +
                                   std::to_string(v));
        uf.unite(u, v);
    }
    // New identifiers in order of the smallest original member per class.
    std::vector<int> old_to_new(n + 1, 0);
    int next = 0;
    for (int v = 1; v <= n; ++v) {
        int root = uf.find(v);
        if (old_to_new[root] == 0) old_to_new[root] = ++next;
        old_to_new[v] = old_to_new[root];
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        int cu = old_to_new[u];
        int cv = old_to_new[v];
        if (cu != cv) edges.emplace_back(cu, cv);
    }
    return {from_edge_list(next, edges), std::move(old_to_new)};
}

std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> dist(g.vertex_count() + 1, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

std::vector<VertexSet> components(const Graph& g, const VertexSet& excluded) {
    const int n = g.vertex_count();
    std::vector<char> skip(n + 1, 0), seen(n + 1, 0);
    for (int v : excluded) skip[v] = 1;
    std::vector<VertexSet> out;
    for (int s = 1; s <= n; ++s) {
        if (skip[s] || seen[s]) continue;
        VertexSet comp;
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int w : g.neighbors(u))
                if (!skip[w] && !seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

VertexSet boundary(const Graph& g, const VertexSet& s) {
    VertexSet out;
    for (int v : s)
        for (int w : g.neighbors(v))
            if (!vs_contains(s, w)) {
                out.push_back(v);
                break;
            }
    return out;
}

VertexSet neighborhood(const Graph& g, const VertexSet& s) {
    std::vector<char> in(g.vertex_count() + 1, 0), hit(g.vertex_count() + 1, 0);
    for (int v : s) in[v] = 1;
    VertexSet out;
    for (int v : s)
        for (int w : g.neighbors(v))
            if (!in[w] && !hit[w]) {
                hit[w] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

bool induces_connected(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    std::vector<char> in(g.vertex_count() + 1, 0);
    for (int v : s) in[v] = 1;
    std::vector<int> stack = {s[0]};
    std::vector<char> seen(g.vertex_count() + 1, 0);
    seen[s[0]] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(u))
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == s.size();
}

bool Corners::distinct() const {
    return x1 != x2 && x1 != x3 && x1 != x4 && x2 != x3 && x2 != x4 && x3 != x4;
}

Graph build_grid(int r, int q) {
    if (r < 1 || q < 1) throw validation_error("grid dimensions must be positive");
    std::vector<Edge> edges;
    auto id = [q](int i, int j) { return (i - 1) * q + j; };
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= q; ++j) {
            if (j < q) edges.emplace_back(id(i, j), id(i, j + 1));
            if (i < r) edges.emplace_back(id(i, j), id(i + 1, j));
        }
    return from_edge_list(r * q, edges);
}

namespace {

// Coordinates from a fixed corner triple: dist(t1) = (i-1)+(j-1),
// dist(t2) = (i-1)+(q-j), dist(t4) = (r-i)+(j-1).
std::optional<WitnessMap> coords_from_corners(const Graph& g, int r, int q, int t1, int t2,
                                              int t4) {
    const int n = g.vertex_count();
    auto d1 = bfs_distances(g, t1);
    auto d2 = t2 > 0 ? bfs_distances(g, t2) : d1;
    auto d4 = t4 > 0 ? bfs_distances(g, t4) : d1;
    WitnessMap w;
    w.rows = r;
    w.cols = q;
    w.resize(n);
    std::vector<std::vector<char>> used(r + 1, std::vector<char>(q + 1, 0));
    for (int v = 1; v <= n; ++v) {
        if (d1[v] < 0) return std::nullopt;
        int i, j;
        if (r == 1) {
            i = 1;
            j = d1[v] + 1;
        } else {
            // dist(t1) + dist(t2) = 2(i-1) + (q-1), dist(t1) + dist(t4) = 2(j-1) + (r-1)
            int two_i = d1[v] + d2[v] - (q - 1);
            int two_j = d1[v] + d4[v] - (r - 1);
            if (two_i % 2 != 0 || two_j % 2 != 0) return std::nullopt;
            i = two_i / 2 + 1;
            j = two_j / 2 + 1;
        }
        if (i < 1 || i > r || j < 1 || j > q || used[i][j]) return std::nullopt;
        used[i][j] = 1;
        w.cell[v] = {i, j};
    }
    // Bijection established; every edge must be a distinct grid edge, and the
    // exact grid edge count then forces all grid adjacencies to be present.
    for (int u = 1; u <= n; ++u)
        for (int v : g.neighbors(u)) {
            if (u > v) continue;
            auto [ui, uj] = w.cell[u];
            auto [vi, vj] = w.cell[v];
            if (std::abs(ui - vi) + std::abs(uj - vj) != 1) return std::nullopt;
        }
    return w;
}

bool lex_less(const WitnessMap& a, const WitnessMap& b) {
    return a.cell < b.cell;
}

}  // namespace

std::optional<WitnessMap> recognize_grid(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return std::nullopt;
    if (n == 1) {
        WitnessMap w;
        w.rows = w.cols = 1;
        w.resize(1);
        w.cell[1] = {1, 1};
        return w;
    }
    if (!g.is_connected()) return std::nullopt;

    // Candidate (r, q) with r <= q solves rq = n, r + q = 2n - m.
    const long long m = g.edge_count();
    const long long s = 2LL * n - m;
    long long disc = s * s - 4LL * n;
    if (disc < 0) return std::nullopt;
    long long root = static_cast<long long>(std::sqrt(static_cast<double>(disc)));
    while (root * root < disc) ++root;
    while (root * root > disc) --root;
    if (root * root != disc || (s - root) % 2 != 0) return std::nullopt;
    const int r = static_cast<int>((s - root) / 2);
    const int q = static_cast<int>((s + root) / 2);
    if (r < 1 || static_cast<long long>(r) * q != n) return std::nullopt;

    std::optional<WitnessMap> best;
    if (r == 1) {
        for (int v = 1; v <= n; ++v) {
            if (g.degree(v) != 1) continue;
            auto w = coords_from_corners(g, 1, q, v, 0, 0);
            if (w && (!best || lex_less(*w, *best))) best = w;
        }
        return best;
    }
    // Corners are the degree-2 vertices; try each as t1 with both axis
    // orientations and keep the lexicographically smallest valid map.
    std::vector<int> corner_candidates;
    for (int v = 1; v <= n; ++v)
        if (g.degree(v) == 2) corner_candidates.push_back(v);
    if (corner_candidates.size() != 4) return std::nullopt;
    for (int t1 : corner_candidates) {
        auto d = bfs_distances(g, t1);
        for (int t2 : corner_candidates) {
            if (t2 == t1 || d[t2] != q - 1) continue;
            for (int t4 : corner_candidates) {
                if (t4 == t1 || t4 == t2 || d[t4] != r - 1) continue;
                auto w = coords_from_corners(g, r, q, t1, t2, t4);
                if (w && (!best || lex_less(*w, *best))) best = w;
            }
        }
    }
    return best;
}

std::optional<std::vector<int>> unique_shortest_path(const Graph& g, int u, int v) {
    const int n = g.vertex_count();
    std::vector<int> dist(n + 1, -1);
    std::vector<int> count(n + 1, 0);  // saturates at 2
    std::queue<int> q;
    dist[u] = 0;
    count[u] = 1;
    q.push(u);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int w : g.neighbors(x)) {
            if (dist[w] < 0) {
                dist[w] = dist[x] + 1;
                q.push(w);
            }
            if (dist[w] == dist[x] + 1) count[w] = std::min(2, count[w] + count[x]);
        }
    }
    if (dist[v] < 0 || count[v] != 1) return std::nullopt;
    std::vector<int> path = {v};
    int cur = v;
    while (cur != u) {
        int pred = 0;
        for (int w : g.neighbors(cur))
            if (dist[w] == dist[cur] - 1 && count[w] > 0) {
                pred = w;
                break;
            }
        cur = pred;
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace gridct
