#include "gridct/kernelize.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "gridct/gc.hpp"
#include "gridct/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gridct {

long long kernel_threshold_k_o(int k) {
    return (4LL * k + 8) * (k + 1) + 1;
}

long long kernel_vertex_bound(int k) {
    const long long ko = kernel_threshold_k_o(k);
    return ko * ko + k + 1;
}

Rr2Outcome apply_rr2(const Graph& g, int k) {
    long long high_degree = 0;
    for (int v = 1; v <= g.vertex_count(); ++v) {
        if (g.degree(v) > k + 5) return Rr2Outcome::no_instance;
        if (g.degree(v) >= 6) ++high_degree;
    }
    if (high_degree > 6LL * k) return Rr2Outcome::no_instance;
    return Rr2Outcome::pass;
}

namespace {

// Assembles a p x t grid from the p/2 strips along the anchor path and
// verifies every separator invariant.
std::optional<GridSeparator> separator_from_anchor(const Graph& g, int k, int p, int t_min,
                                                   const std::vector<int>& path) {
    std::vector<std::vector<int>> cells(p);
    int t = -1;
    for (int i = 0; i + 1 < p; i += 2) {
        auto strip = find_row_separator_grid(g, path[i], path[i + 1]);
        if (!strip) return std::nullopt;
        const int width = static_cast<int>(strip->first.size());
        if (t < 0) t = width;
        if (width != t) return std::nullopt;
        cells[i] = std::move(strip->first);
        cells[i + 1] = std::move(strip->second);
    }
    if (t < t_min) return std::nullopt;

    const int n = g.vertex_count();
    std::vector<std::pair<int, int>> coord(n + 1, {-1, -1});
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < t; ++j) {
            int v = cells[i][j];
            if (v < 1 || v > n || coord[v].first >= 0) return std::nullopt;
            coord[v] = {i, j};
        }
    // induced subgraph must be exactly the p x t grid
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < t; ++j) {
            int v = cells[i][j];
            int expected = (i > 0) + (i + 1 < p) + (j > 0) + (j + 1 < t);
            int found = 0;
            for (int w : g.neighbors(v)) {
                if (coord[w].first < 0) continue;
                if (std::abs(coord[w].first - i) + std::abs(coord[w].second - j) != 1)
                    return std::nullopt;
                ++found;
            }
            if (found != expected) return std::nullopt;
        }

    VertexSet sep;
    for (const auto& row : cells) sep.insert(sep.end(), row.begin(), row.end());
    std::sort(sep.begin(), sep.end());
    auto comps = components(g, sep);
    if (comps.size() != 2) return std::nullopt;
    if (static_cast<int>(comps[0].size()) < k + 1 || static_cast<int>(comps[1].size()) < k + 1)
        return std::nullopt;
    VertexSet row_first(cells[0].begin(), cells[0].end());
    std::sort(row_first.begin(), row_first.end());
    VertexSet row_last(cells[p - 1].begin(), cells[p - 1].end());
    std::sort(row_last.begin(), row_last.end());
    VertexSet n0 = neighborhood(g, comps[0]);
    VertexSet n1 = neighborhood(g, comps[1]);
    if (!((n0 == row_first && n1 == row_last) || (n0 == row_last && n1 == row_first)))
        return std::nullopt;

    GridSeparator out;
    out.p = p;
    out.t = t;
    out.cells = std::move(cells);
    return out;
}

struct AnchorPair {
    int a, b;
    std::vector<int> path;
};

std::vector<AnchorPair> anchor_pairs(const Graph& g, int p, bool parallel) {
    const int n = g.vertex_count();
    std::vector<std::vector<AnchorPair>> per_a(n + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(par::effective_threads()) if (parallel)
#endif
    for (int a = 1; a <= n; ++a) {
        auto dist = bfs_distances(g, a);
        for (int b = a + 1; b <= n; ++b) {
            if (dist[b] != p - 1) continue;
            auto path = unique_shortest_path(g, a, b);
            if (path) per_a[a].push_back({a, b, std::move(*path)});
        }
    }
    std::vector<AnchorPair> out;
    for (int a = 1; a <= n; ++a)
        out.insert(out.end(), std::make_move_iterator(per_a[a].begin()),
                   std::make_move_iterator(per_a[a].end()));
    return out;
}

bool better(const GridSeparator& cand, int ca, int cb, const std::optional<GridSeparator>& best,
            int ba, int bb) {
    if (!best) return true;
    if (cand.t != best->t) return cand.t > best->t;
    return std::pair(ca, cb) < std::pair(ba, bb);
}

}  // namespace

std::optional<GridSeparator> find_grid_separator_serial(const Graph& g, int k, int p, int t_min) {
    if (p < 2 || p % 2 != 0) throw validation_error("separator row count must be even and >= 2");
    std::optional<GridSeparator> best;
    int best_a = 0, best_b = 0;
    for (const auto& anchor : anchor_pairs(g, p, false)) {
        auto cand = separator_from_anchor(g, k, p, t_min, anchor.path);
        if (cand && better(*cand, anchor.a, anchor.b, best, best_a, best_b)) {
            best = std::move(cand);
            best_a = anchor.a;
            best_b = anchor.b;
        }
    }
    return best;
}

std::optional<GridSeparator> find_grid_separator(const Graph& g, int k, int p, int t_min) {
    if (par::threads() == 1 || !par::openmp_available())
        return find_grid_separator_serial(g, k, p, t_min);
    if (p < 2 || p % 2 != 0) throw validation_error("separator row count must be even and >= 2");
    auto anchors = anchor_pairs(g, p, true);
    std::optional<GridSeparator> best;
    int best_a = 0, best_b = 0;
#ifdef _OPENMP
#pragma omp parallel num_threads(par::effective_threads())
#endif
    {
        std::optional<GridSeparator> local;
        int la = 0, lb = 0;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (size_t i = 0; i < anchors.size(); ++i) {
            auto cand = separator_from_anchor(g, k, p, t_min, anchors[i].path);
            if (cand && better(*cand, anchors[i].a, anchors[i].b, local, la, lb)) {
                local = std::move(cand);
                la = anchors[i].a;
                lb = anchors[i].b;
            }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            if (local && better(*local, la, lb, best, best_a, best_b)) {
                best = std::move(local);
                best_a = la;
                best_b = lb;
            }
        }
    }
    return best;
}

std::pair<Graph, std::vector<int>> apply_rr3(const Graph& g, int k, const GridSeparator& sep) {
    (void)k;
    if (sep.p < 4) throw validation_error("separator needs p >= 4 for internal row pair");
    if (static_cast<int>(sep.cells.size()) != sep.p) throw validation_error("malformed separator");
    const int upper = sep.p / 2;  // 1-based rows upper, upper + 1
    std::vector<Edge> f;
    for (int j = 0; j < sep.t; ++j) {
        int u = sep.cells[upper - 1][j];
        int v = sep.cells[upper][j];
        if (!g.has_edge(u, v)) throw validation_error("separator rows not vertically adjacent");
        f.emplace_back(u, v);
    }
    return contract_edges(g, f);
}

KernelReport kernelize(const Graph& g, int k) {
    KernelReport report;
    report.k = k;
    report.k_o = kernel_threshold_k_o(k);
    report.vertex_bound = kernel_vertex_bound(k);
    if (k < 0) throw validation_error("k must be nonnegative");
    if (!g.is_connected() || g.vertex_count() == 0) return report;  // NO instance
    if (apply_rr2(g, k) == Rr2Outcome::no_instance) return report;
    if (k == 0 && !recognize_grid(g)) return report;

    Graph cur = g;
    while (cur.vertex_count() > report.vertex_bound) {
        auto sep = find_grid_separator(cur, k, 4 * k + 6, 1);
        if (!sep) return report;  // no separator for a graph this large: NO
        cur = apply_rr3(cur, k, *sep).first;
        ++report.rr3_applications;
    }
    report.outcome = KernelReport::Outcome::kernel;
    report.kernel_graph = std::move(cur);
    return report;
}

}  // namespace gridct
