#include "gridct/slab.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <climits>
#include <cstdlib>

#include "gridct/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gridct {

VertexSet RSlab::all() const {
    VertexSet a;
    for (const auto& p : parts) a = vs_union(a, p);
    return a;
}

int RSlab::size() const {
    int s = 0;
    for (const auto& p : parts) s += static_cast<int>(p.size());
    return s;
}

bool RSlab::contains(int v) const {
    for (const auto& p : parts)
        if (vs_contains(p, v)) return true;
    return false;
}

std::vector<int> RSlab::canonical_key() const {
    std::vector<int> key;
    key.push_back(static_cast<int>(parts.size()));
    for (const auto& p : parts) {
        key.push_back(static_cast<int>(p.size()));
        key.insert(key.end(), p.begin(), p.end());
    }
    return key;
}

bool slab_key_less(const RSlab& a, const RSlab& b) {
    return a.canonical_key() < b.canonical_key();
}

namespace {

std::atomic<long long> g_readd_discrepancies{0};

bool sets_adjacent(const Graph& g, const VertexSet& a, const std::vector<char>& in_b) {
    for (int v : a)
        for (int w : g.neighbors(v))
            if (in_b[w]) return true;
    return false;
}

}  // namespace

long long slab_readd_discrepancies() { return g_readd_discrepancies.load(); }

bool is_r_slab(const Graph& g, const RSlab& slab, const std::vector<char>& excluded_mark) {
    const int n = g.vertex_count();
    const int r = static_cast<int>(slab.parts.size());
    if (r < 1) return false;
    std::vector<int> part_of(n + 1, 0);
    for (int i = 0; i < r; ++i) {
        const auto& p = slab.parts[i];
        if (p.empty() || !vs_is_canonical(p)) return false;
        for (int v : p) {
            if (v < 1 || v > n || part_of[v] != 0) return false;
            if (!excluded_mark.empty() && excluded_mark[v]) return false;
            part_of[v] = i + 1;
        }
    }
    VertexSet a = slab.all();
    for (const auto& p : slab.parts)
        if (!induces_connected(g, p)) return false;
    if (!induces_connected(g, a)) return false;

    // Part chain: A_i ~ A_j iff |i - j| = 1.
    std::vector<std::vector<char>> adj(r, std::vector<char>(r, 0));
    for (int v : a)
        for (int w : g.neighbors(v))
            if (part_of[w] != 0) adj[part_of[v] - 1][part_of[w] - 1] = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (adj[i][j] != (j - i == 1 ? 1 : 0)) return false;

    // B_i = N(A_i) \ A in the visible graph: disjoint, adjacent only for
    // |i - j| <= 1.
    std::vector<int> b_of(n + 1, 0);
    std::vector<VertexSet> bs(r);
    for (int i = 0; i < r; ++i)
        for (int v : slab.parts[i])
            for (int w : g.neighbors(v)) {
                if (part_of[w] != 0) continue;
                if (!excluded_mark.empty() && excluded_mark[w]) continue;
                if (b_of[w] == 0) {
                    b_of[w] = i + 1;
                    bs[i].push_back(w);
                } else if (b_of[w] != i + 1) {
                    return false;  // B sets overlap
                }
            }
    for (int i = 0; i < r; ++i) {
        std::vector<char> in_bi(n + 1, 0);
        for (int v : bs[i]) in_bi[v] = 1;
        for (int j = 0; j < r; ++j) {
            if (std::abs(i - j) <= 1) continue;
            for (int v : bs[j])
                for (int w : g.neighbors(v))
                    if (in_bi[w]) return false;
        }
    }
    return true;
}

bool is_r_slab(const Graph& g, const RSlab& slab) {
    return is_r_slab(g, slab, {});
}

namespace {

// Recursive four-way branching enumerator. Vertices are either excluded
// (treated as deleted), assigned to a part, or free. The exclude branch
// re-verifies every returned slab in the graph with the vertex restored.
//
// Vertices excluded by the recursion itself stay in the final outside
// neighborhood, so the B-set constraints pin them to the single part they
// may touch; contradictions prune the subtree before it is explored.
struct SlabEnumerator {
    const Graph& g;
    int r;
    int alpha;
    int closed_budget;  // cap on |A| + |N(A)|, INT_MAX when unused
    int part1_min = 0;  // smallest identifier allowed in part 1
    int pinned_count = 0;
    int first_branch = -1;  // restrict the first branching point to one child
    std::vector<char> excluded;
    std::vector<int> part_of;
    std::vector<int> pin;  // future B index of recursion-excluded vertices
    std::vector<int> q_list;
    std::vector<RSlab> out;

    // scratch for candidate analysis
    std::vector<int> stamp, minp, maxp;
    std::vector<int> scratch_candidates;
    int cur_stamp = 0;

    SlabEnumerator(const Graph& graph, int parts, int a, int closed)
        : g(graph), r(parts), alpha(a), closed_budget(closed < 0 ? INT_MAX : closed) {
        const int n = g.vertex_count();
        excluded.assign(n + 1, 0);
        part_of.assign(n + 1, 0);
        pin.assign(n + 1, 0);
        stamp.assign(n + 1, 0);
        minp.assign(n + 1, 0);
        maxp.assign(n + 1, 0);
    }

    bool seed_valid() const {
        for (int v : q_list)
            for (int w : g.neighbors(v))
                if (part_of[w] != 0 && std::abs(part_of[w] - part_of[v]) >= 2) return false;
        return true;
    }

    int visible_neighborhood_size(const RSlab& slab) const {
        const int n = g.vertex_count();
        std::vector<char> in(n + 1, 0), hit(n + 1, 0);
        for (const auto& p : slab.parts)
            for (int v : p) in[v] = 1;
        int count = 0;
        for (const auto& p : slab.parts)
            for (int v : p)
                for (int w : g.neighbors(v))
                    if (!in[w] && !excluded[w] && !hit[w]) {
                        hit[w] = 1;
                        ++count;
                    }
        return count;
    }

    RSlab current_slab() const {
        RSlab s;
        s.parts.assign(r, {});
        for (int v : q_list) s.parts[part_of[v] - 1].push_back(v);
        for (auto& p : s.parts) std::sort(p.begin(), p.end());
        return s;
    }

    // Shortcut test for restoring v: v touches exactly one part and every
    // outside neighbor of part j that is adjacent to v sits within distance
    // one of it. Compared against the full re-verification; any disagreement
    // is counted, never trusted.
    bool readd_shortcut(const RSlab& slab, int v) const {
        const int n = g.vertex_count();
        std::vector<int> part_mark(n + 1, 0);
        for (size_t i = 0; i < slab.parts.size(); ++i)
            for (int u : slab.parts[i]) part_mark[u] = static_cast<int>(i) + 1;
        int touched = 0;
        for (int w : g.neighbors(v))
            if (part_mark[w] != 0 && part_mark[w] != touched) {
                if (touched != 0) return false;
                touched = part_mark[w];
            }
        if (touched == 0) return false;
        std::vector<char> adj_v(n + 1, 0);
        for (int w : g.neighbors(v)) adj_v[w] = 1;
        for (size_t j = 0; j < slab.parts.size(); ++j)
            for (int u : slab.parts[j])
                for (int w : g.neighbors(u)) {
                    if (part_mark[w] != 0 || excluded[w] || w == v) continue;
                    if (adj_v[w] && std::abs(static_cast<int>(j) + 1 - touched) > 1) return false;
                }
        return true;
    }

    void finalize(int beta) {
        RSlab s = current_slab();
        for (const auto& p : s.parts)
            if (p.empty()) return;
        const int nsize = visible_neighborhood_size(s);
        if (nsize > beta) return;
        if (s.size() + nsize > closed_budget) return;
        if (is_r_slab(g, s, excluded)) out.push_back(std::move(s));
    }

    void branch_assign(int v, int part, int beta, int parent_mu) {
        if (part == 1 && v < part1_min) return;
        // chain validity against assigned vertices, B disjointness against
        // pinned excluded vertices
        for (int w : g.neighbors(v)) {
            if (part_of[w] != 0 && std::abs(part_of[w] - part) >= 2) return;
            if (pin[w] != 0 && pin[w] != part) return;
        }
        part_of[v] = part;
        q_list.push_back(v);
        run(beta, parent_mu);
        q_list.pop_back();
        part_of[v] = 0;
    }

    void branch_exclude(int v, int part_touched, int beta, int parent_mu) {
        // an excluded vertex ends up in B of the one part it touches; edges
        // between far B sets are forbidden
        for (int w : g.neighbors(v))
            if (pin[w] != 0 && std::abs(pin[w] - part_touched) >= 2) return;
        excluded[v] = 1;
        pin[v] = part_touched;
        ++pinned_count;
        const size_t mark = out.size();
        run(beta - 1, parent_mu);
        --pinned_count;
        excluded[v] = 0;
        pin[v] = 0;
        size_t keep = mark;
        for (size_t idx = mark; idx < out.size(); ++idx) {
            bool full = is_r_slab(g, out[idx], excluded) &&
                        visible_neighborhood_size(out[idx]) <= beta;
#ifndef NDEBUG
            bool shortcut = readd_shortcut(out[idx], v);
            if (shortcut != full) g_readd_discrepancies.fetch_add(1);
#endif
            if (full) {
                if (keep != idx) out[keep] = std::move(out[idx]);
                ++keep;
            }
        }
        out.resize(keep);
    }

    void run(int beta, int parent_mu) {
        const int mu = alpha - static_cast<int>(q_list.size()) + beta;
        assert(mu < parent_mu);
        if (static_cast<int>(q_list.size()) > alpha || beta < 0) return;

        // Candidate scan: free neighbors of Q with the range of adjacent parts.
        ++cur_stamp;
        scratch_candidates.clear();
        for (int u : q_list)
            for (int w : g.neighbors(u)) {
                if (excluded[w] || part_of[w] != 0) continue;
                if (stamp[w] != cur_stamp) {
                    stamp[w] = cur_stamp;
                    minp[w] = maxp[w] = part_of[u];
                    scratch_candidates.push_back(w);
                } else {
                    minp[w] = std::min(minp[w], part_of[u]);
                    maxp[w] = std::max(maxp[w], part_of[u]);
                }
            }
        int forced_v = 0, forced_part = 0;
        int pivot_two = 0, pivot_any = 0;
        for (int w : scratch_candidates) {
            const int span = maxp[w] - minp[w];
            if (span >= 3) return;  // cannot be placed, cannot sit in two far B sets
            if (span == 2 && (forced_v == 0 || w < forced_v)) {
                forced_v = w;
                forced_part = minp[w] + 1;
            }
            // a candidate touching two parts has a dead exclude branch
            if (span == 1 && (pivot_two == 0 || w < pivot_two)) pivot_two = w;
            if (pivot_any == 0 || w < pivot_any) pivot_any = w;
        }
        // Q ends up inside A; pinned vertices and current candidates end up
        // in A or N(A), so they all count against the closed budget.
        if (static_cast<int>(q_list.size()) + pinned_count +
                static_cast<int>(scratch_candidates.size()) >
            closed_budget)
            return;
        if (forced_v != 0) {
            branch_assign(forced_v, forced_part, beta, mu);
            return;
        }
        // No candidates, or Q is full: A = Q is the only completion, and
        // validity in the current graph subsumes the per-vertex exclusion
        // chain (outside removals only shrink the B sets).
        if (pivot_any == 0 || static_cast<int>(q_list.size()) == alpha) {
            finalize(beta);
            return;
        }
        const int pivot = pivot_two != 0 ? pivot_two : pivot_any;
        const int i = minp[pivot];
        const int take = first_branch;
        first_branch = -1;
        int child = 0;
        if (minp[pivot] == maxp[pivot]) {
            if (take < 0 || take == child) branch_exclude(pivot, i, beta, mu);
            ++child;
        }
        for (int i0 : {i - 1, i, i + 1})
            if (i0 >= 1 && i0 <= r) {
                if (take < 0 || take == child) branch_assign(pivot, i0, beta, mu);
                ++child;
            }
    }
};

void sort_unique(std::vector<RSlab>& slabs) {
    std::sort(slabs.begin(), slabs.end(), slab_key_less);
    slabs.erase(std::unique(slabs.begin(), slabs.end()), slabs.end());
}

}  // namespace

namespace {

std::vector<RSlab> enumerate_seeded_impl(const Graph& g, const SeedPartition& seed, int alpha,
                                         int beta, const VertexSet& excluded, int part1_min,
                                         int closed_budget, int first_branch = -1) {
    const int r = static_cast<int>(seed.parts.size());
    if (r < 1 || alpha < 0 || beta < 0) return {};
    SlabEnumerator en(g, r, alpha, closed_budget);
    en.part1_min = part1_min;
    en.first_branch = first_branch;
    for (int v : excluded) {
        if (v < 1 || v > g.vertex_count()) return {};
        en.excluded[v] = 1;
    }
    bool any = false;
    for (int i = 0; i < r; ++i)
        for (int v : seed.parts[i]) {
            if (v < 1 || v > g.vertex_count()) return {};
            if (en.part_of[v] != 0 || en.excluded[v]) return {};  // overlapping or excluded seed
            en.part_of[v] = i + 1;
            en.q_list.push_back(v);
            any = true;
        }
    if (!any) return {};
    if (!en.seed_valid()) return {};
    en.run(beta, INT_MAX);
    sort_unique(en.out);
    return en.out;
}

std::vector<RSlab> all_from_seed(const Graph& g, int r, int alpha, int beta, int v,
                                 int closed_budget, int first_branch = -1) {
    SeedPartition seed;
    seed.parts.assign(r, {});
    seed.parts[0] = {v};
    // with v forced minimal in part 1 each slab comes from exactly one seed
    return enumerate_seeded_impl(g, seed, alpha, beta, {}, v, closed_budget, first_branch);
}

}  // namespace

std::vector<RSlab> enumerate_seeded(const Graph& g, const SeedPartition& seed, int alpha, int beta,
                                    const VertexSet& excluded, int closed_budget) {
    return enumerate_seeded_impl(g, seed, alpha, beta, excluded, 0, closed_budget);
}

std::vector<RSlab> enumerate_all_serial(const Graph& g, int r, int alpha, int beta,
                                        int closed_budget) {
    if (r < 1 || r > g.vertex_count()) return {};
    std::vector<RSlab> out;
    for (int v = 1; v <= g.vertex_count(); ++v) {
        auto part = all_from_seed(g, r, alpha, beta, v, closed_budget);
        out.insert(out.end(), part.begin(), part.end());
    }
    sort_unique(out);
    return out;
}

std::vector<RSlab> enumerate_all(const Graph& g, int r, int alpha, int beta, int closed_budget) {
    if (par::threads() == 1 || !par::openmp_available())
        return enumerate_all_serial(g, r, alpha, beta, closed_budget);
    if (r < 1 || r > g.vertex_count()) return {};
    const int n = g.vertex_count();
    // one job per (seed, child of its first branch point) for balance
    std::vector<std::vector<RSlab>> per_job(4 * (n + 1));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(par::effective_threads())
#endif
    for (int job = 0; job < 4 * n; ++job) {
        const int v = job / 4 + 1;
        per_job[job] = all_from_seed(g, r, alpha, beta, v, closed_budget, job % 4);
    }
    std::vector<RSlab> out;
    for (int job = 0; job < 4 * n; ++job)
        out.insert(out.end(), per_job[job].begin(), per_job[job].end());
    sort_unique(out);
    return out;
}

std::vector<VertexSet> enumerate_connected_sets(const Graph& g, const VertexSet& q, int alpha,
                                                int beta) {
    SeedPartition seed;
    seed.parts = {q};
    auto slabs = enumerate_seeded(g, seed, alpha, beta);
    std::vector<VertexSet> out;
    out.reserve(slabs.size());
    for (auto& s : slabs) out.push_back(std::move(s.parts[0]));
    return out;
}

}  // namespace gridct
