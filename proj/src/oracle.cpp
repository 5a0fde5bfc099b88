#include "gridct/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>

#include "gridct/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gridct {

VerifyResult verify_witness(const Graph& g, const WitnessMap& w, int k) {
    const int n = g.vertex_count();
    const int r = w.rows, q = w.cols;
    if (r < 1 || q < 1) return {false, "grid dimensions not positive"};
    if (static_cast<int>(w.cell.size()) < n + 1) return {false, "incomplete: assignment missing"};
    for (int v = 1; v <= n; ++v) {
        auto [i, j] = w.cell[v];
        if (i == 0 && j == 0) return {false, "incomplete: vertex " + std::to_string(v) + " unassigned"};
        if (i < 1 || i > r || j < 1 || j > q)
            return {false, "vertex " + std::to_string(v) + " mapped outside the grid"};
    }
    auto cell_id = [q](int i, int j) { return (i - 1) * q + j - 1; };
    std::vector<VertexSet> cells(static_cast<size_t>(r) * q);
    for (int v = 1; v <= n; ++v) {
        auto [i, j] = w.cell[v];
        cells[cell_id(i, j)].push_back(v);
    }
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= q; ++j) {
            const auto& c = cells[cell_id(i, j)];
            if (c.empty())
                return {false, "cell (" + std::to_string(i) + "," + std::to_string(j) + ") empty"};
            if (!induces_connected(g, c))
                return {false, "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") not connected"};
        }
    std::vector<char> touched(static_cast<size_t>(r) * q * r * q, 0);
    for (auto [u, v] : g.edges()) {
        auto [ui, uj] = w.cell[u];
        auto [vi, vj] = w.cell[v];
        if (ui == vi && uj == vj) continue;
        if (std::abs(ui - vi) + std::abs(uj - vj) != 1)
            return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                               " joins non-adjacent cells"};
        touched[cell_id(ui, uj) * r * q + cell_id(vi, vj)] = 1;
        touched[cell_id(vi, vj) * r * q + cell_id(ui, uj)] = 1;
    }
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= q; ++j) {
            if (j < q && !touched[cell_id(i, j) * r * q + cell_id(i, j + 1)])
                return {false, "missing edge between cells (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") and (" + std::to_string(i) + "," +
                                   std::to_string(j + 1) + ")"};
            if (i < r && !touched[cell_id(i, j) * r * q + cell_id(i + 1, j)])
                return {false, "missing edge between cells (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") and (" + std::to_string(i + 1) + "," +
                                   std::to_string(j) + ")"};
        }
    const int cost = n - r * q;
    if (cost > k)
        return {false, "cost " + std::to_string(cost) + " exceeds k=" + std::to_string(k)};
    return {true, ""};
}

long long default_oracle_budget() {
    if (const char* env = std::getenv("GRIDCTL_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 5'000'000;
}

namespace {

constexpr long long kCountCap = 4'000'000'000'000'000'000LL;

long long comb_count(int m, int j) {
    if (j < 0 || j > m) return 0;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= j; ++i) {
        acc = acc * static_cast<unsigned>(m - j + i) / static_cast<unsigned>(i);
        if (acc > static_cast<unsigned __int128>(kCountCap)) return kCountCap;
    }
    return static_cast<long long>(acc);
}

// Combination of size j over [0, m) with the given lexicographic rank.
std::vector<int> comb_unrank(int m, int j, long long rank) {
    std::vector<int> out;
    out.reserve(j);
    int next = 0;
    for (int slot = j; slot >= 1; --slot) {
        for (int c = next;; ++c) {
            long long below = comb_count(m - c - 1, slot - 1);
            if (rank < below) {
                out.push_back(c);
                next = c + 1;
                break;
            }
            rank -= below;
        }
    }
    return out;
}

bool comb_next(std::vector<int>& idx, int m) {
    const int j = static_cast<int>(idx.size());
    for (int pos = j - 1; pos >= 0; --pos) {
        if (idx[pos] < m - (j - pos)) {
            ++idx[pos];
            for (int p2 = pos + 1; p2 < j; ++p2) idx[p2] = idx[p2 - 1] + 1;
            return true;
        }
    }
    return false;
}

struct ContractScratch {
    std::vector<int> parent;

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Returns the contracted graph and the old->new vertex map.
    std::pair<Graph, std::vector<int>> apply(const Graph& g, const std::vector<Edge>& all_edges,
                                             const std::vector<int>& picked) {
        const int n = g.vertex_count();
        parent.assign(n + 1, 0);
        for (int i = 0; i <= n; ++i) parent[i] = i;
        for (int idx : picked) {
            auto [u, v] = all_edges[idx];
            int a = find(u), b = find(v);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
        std::vector<int> old_to_new(n + 1, 0);
        int next = 0;
        for (int v = 1; v <= n; ++v) {
            int root = find(v);
            if (old_to_new[root] == 0) old_to_new[root] = ++next;
            old_to_new[v] = old_to_new[root];
        }
        std::vector<Edge> edges;
        for (auto [u, v] : all_edges) {
            int cu = old_to_new[u], cv = old_to_new[v];
            if (cu != cv) edges.emplace_back(cu, cv);
        }
        return {from_edge_list(next, edges), std::move(old_to_new)};
    }
};

bool target_matches(const WitnessMap& rec, GridTarget target) {
    switch (target) {
        case GridTarget::any: return true;
        case GridTarget::min_two: return rec.rows >= 2 && rec.cols >= 2;
        case GridTarget::path: return rec.rows == 1;
    }
    return false;
}

std::optional<WitnessMap> try_subset(const Graph& g, const std::vector<Edge>& all_edges,
                                     const std::vector<int>& picked, GridTarget target) {
    ContractScratch scratch;
    auto [contracted, old_to_new] = scratch.apply(g, all_edges, picked);
    auto rec = recognize_grid(contracted);
    if (!rec || !target_matches(*rec, target)) return std::nullopt;
    WitnessMap w;
    w.rows = rec->rows;
    w.cols = rec->cols;
    w.resize(g.vertex_count());
    for (int v = 1; v <= g.vertex_count(); ++v) w.cell[v] = rec->cell[old_to_new[v]];
    return w;
}

}  // namespace

Verdict brute_force_grid_serial(const Graph& g, int k, const OracleOptions& opts) {
    const long long budget = opts.budget < 0 ? default_oracle_budget() : opts.budget;
    const auto all_edges = g.edges();
    const int m = static_cast<int>(all_edges.size());
    Verdict verdict;
    for (int j = 0; j <= std::min<long long>(k, m); ++j) {
        const long long total = comb_count(m, j);
        const long long cap = std::min(total, budget - verdict.explored);
        std::vector<int> idx(j);
        for (int i = 0; i < j; ++i) idx[i] = i;
        for (long long rank = 0; rank < cap; ++rank) {
            if (opts.reverse_order) idx = comb_unrank(m, j, total - 1 - rank);
            ++verdict.explored;
            auto w = try_subset(g, all_edges, idx, opts.target);
            if (w) {
                verdict.answer = Verdict::Answer::yes;
                verdict.witness = std::move(w);
                return verdict;
            }
            if (!opts.reverse_order) comb_next(idx, m);
        }
        if (cap < total) {
            verdict.answer = Verdict::Answer::budget;
            return verdict;
        }
    }
    verdict.answer = Verdict::Answer::no;
    return verdict;
}

Verdict brute_force_grid(const Graph& g, int k, const OracleOptions& opts) {
    if (par::threads() == 1 || !par::openmp_available() || opts.reverse_order)
        return brute_force_grid_serial(g, k, opts);
    const long long budget = opts.budget < 0 ? default_oracle_budget() : opts.budget;
    const auto all_edges = g.edges();
    const int m = static_cast<int>(all_edges.size());
    Verdict verdict;
    const long long block = 16384LL * par::effective_threads();
    for (int j = 0; j <= std::min<long long>(k, m); ++j) {
        const long long total = comb_count(m, j);
        const long long cap = std::min(total, budget - verdict.explored);
        long long found_rank = -1;
        WitnessMap found_witness;
        constexpr long long kChunk = 4096;
        for (long long start = 0; start < cap && found_rank < 0; start += block) {
            const long long stop = std::min(cap, start + block);
            const long long chunks = (stop - start + kChunk - 1) / kChunk;
            long long local_best = -1;
            WitnessMap local_witness;
#ifdef _OPENMP
#pragma omp parallel num_threads(par::effective_threads())
#endif
            {
                long long my_best = -1;
                WitnessMap my_witness;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
                for (long long chunk = 0; chunk < chunks; ++chunk) {
                    const long long lo = start + chunk * kChunk;
                    const long long hi = std::min(stop, lo + kChunk);
                    auto idx = comb_unrank(m, j, lo);
                    for (long long rank = lo; rank < hi; ++rank) {
                        auto w = try_subset(g, all_edges, idx, opts.target);
                        if (w && (my_best < 0 || rank < my_best)) {
                            my_best = rank;
                            my_witness = std::move(*w);
                            break;  // earlier ranks in this chunk are done
                        }
                        comb_next(idx, m);
                    }
                }
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (my_best >= 0 && (local_best < 0 || my_best < local_best)) {
                        local_best = my_best;
                        local_witness = std::move(my_witness);
                    }
                }
            }
            if (local_best >= 0) {
                found_rank = local_best;
                found_witness = std::move(local_witness);
            }
        }
        if (found_rank >= 0) {
            verdict.explored += found_rank + 1;
            verdict.answer = Verdict::Answer::yes;
            verdict.witness = std::move(found_witness);
            return verdict;
        }
        verdict.explored += cap;
        if (cap < total) {
            verdict.answer = Verdict::Answer::budget;
            return verdict;
        }
    }
    verdict.answer = Verdict::Answer::no;
    return verdict;
}

bool brute_force_nae(const NaeFormula& f) {
    if (f.variable_count > 20) throw budget_error("NAE brute force limited to 20 variables");
    for (const auto& clause : f.clauses) {
        if (clause.empty()) throw validation_error("empty clause");
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                throw validation_error("literal out of range");
    }
    const unsigned long long limit = 1ULL << f.variable_count;
    for (unsigned long long mask = 0; mask < limit; ++mask) {
        bool ok = true;
        for (const auto& clause : f.clauses) {
            bool has_true = false, has_false = false;
            for (int lit : clause) {
                bool val = (mask >> (std::abs(lit) - 1)) & 1ULL;
                if (lit < 0) val = !val;
                (val ? has_true : has_false) = true;
            }
            if (!has_true || !has_false) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool brute_force_hypergraph_2col(const Hypergraph& h) {
    if (h.vertex_count > 20) throw budget_error("2-coloring brute force limited to 20 vertices");
    for (const auto& e : h.edges) {
        if (e.empty()) throw validation_error("empty hyperedge");
        for (int v : e)
            if (v < 1 || v > h.vertex_count) throw validation_error("hyperedge vertex out of range");
    }
    const unsigned long long limit = 1ULL << h.vertex_count;
    for (unsigned long long mask = 0; mask < limit; ++mask) {
        bool ok = true;
        for (const auto& e : h.edges) {
            bool c0 = false, c1 = false;
            for (int v : e) (((mask >> (v - 1)) & 1ULL) ? c1 : c0) = true;
            if (!c0 || !c1) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace gridct
