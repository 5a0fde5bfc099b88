#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gridct/graph.hpp"
#include "gridct/slab.hpp"

namespace testutil {

using gridct::Edge;
using gridct::Graph;
using gridct::RSlab;
using gridct::VertexSet;

inline Graph path_graph(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    return gridct::from_edge_list(n, e);
}

inline Graph cycle_graph(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(n, 1);
    return gridct::from_edge_list(n, e);
}

inline Graph complete_graph(int n) {
    std::vector<Edge> e;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) e.emplace_back(u, v);
    return gridct::from_edge_list(n, e);
}

// star with center 1 and the given number of leaves
inline Graph star_graph(int leaves) {
    std::vector<Edge> e;
    for (int i = 2; i <= leaves + 1; ++i) e.emplace_back(1, i);
    return gridct::from_edge_list(leaves + 1, e);
}

// Independent oracle for the slab definition: enumerates every ordered
// r-partition of every connected vertex subset and keeps those satisfying
// the definition directly. Never calls the branching enumerator.
class SlabOracle {
  public:
    SlabOracle(const Graph& g, int r) : g_(g), r_(r) {
        const int n = g.vertex_count();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            VertexSet a;
            for (int v = 1; v <= n; ++v)
                if (mask & (1u << (v - 1))) a.push_back(v);
            if (!connected(a)) continue;
            std::vector<int> part(a.size(), 0);
            assignments(a, part, 0);
        }
        std::sort(slabs_.begin(), slabs_.end(),
                  [](const Entry& a, const Entry& b) { return gridct::slab_key_less(a.slab, b.slab); });
    }

    std::vector<RSlab> query(int alpha, int beta,
                             const std::vector<VertexSet>* seed = nullptr) const {
        std::vector<RSlab> out;
        for (const auto& e : slabs_) {
            if (e.size > alpha || e.nsize > beta) continue;
            if (seed) {
                bool ok = true;
                for (int i = 0; i < r_ && ok; ++i)
                    for (int v : (*seed)[i])
                        if (!gridct::vs_contains(e.slab.parts[i], v)) {
                            ok = false;
                            break;
                        }
                if (!ok) continue;
            }
            out.push_back(e.slab);
        }
        return out;
    }

    std::vector<RSlab> all() const {
        std::vector<RSlab> out;
        out.reserve(slabs_.size());
        for (const auto& e : slabs_) out.push_back(e.slab);
        return out;
    }

  private:
    bool connected(const VertexSet& s) const {
        if (s.empty()) return false;
        std::vector<int> stack = {s[0]};
        VertexSet seen = {s[0]};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : s)
                if (!gridct::vs_contains(seen, v) && g_.has_edge(u, v)) {
                    gridct::vs_insert(seen, v);
                    stack.push_back(v);
                }
        }
        return seen.size() == s.size();
    }

    bool adjacent(const VertexSet& a, const VertexSet& b) const {
        for (int u : a)
            for (int v : b)
                if (g_.has_edge(u, v)) return true;
        return false;
    }

    void assignments(const VertexSet& a, std::vector<int>& part, size_t pos) {
        if (pos == a.size()) {
            check(a, part);
            return;
        }
        for (int p = 0; p < r_; ++p) {
            part[pos] = p;
            assignments(a, part, pos + 1);
        }
    }

    void check(const VertexSet& a, const std::vector<int>& part) {
        RSlab s;
        s.parts.assign(r_, {});
        for (size_t i = 0; i < a.size(); ++i) s.parts[part[i]].push_back(a[i]);
        for (const auto& p : s.parts)
            if (p.empty() || !connected(p)) return;
        for (int i = 0; i < r_; ++i)
            for (int j = i + 1; j < r_; ++j)
                if (adjacent(s.parts[i], s.parts[j]) != (j - i == 1)) return;
        std::vector<VertexSet> bs(r_);
        for (int i = 0; i < r_; ++i) {
            VertexSet nb = gridct::neighborhood(g_, s.parts[i]);
            bs[i] = gridct::vs_difference(nb, a);
        }
        for (int i = 0; i < r_; ++i)
            for (int j = i + 1; j < r_; ++j) {
                if (!gridct::vs_disjoint(bs[i], bs[j])) return;
                if (j - i >= 2 && adjacent(bs[i], bs[j])) return;
            }
        Entry e;
        e.size = static_cast<int>(a.size());
        e.nsize = static_cast<int>(gridct::neighborhood(g_, a).size());
        e.slab = std::move(s);
        slabs_.push_back(std::move(e));
    }

    struct Entry {
        RSlab slab;
        int size = 0;
        int nsize = 0;
    };

    const Graph& g_;
    int r_;
    std::vector<Entry> slabs_;
};

inline std::vector<std::vector<int>> slab_keys(const std::vector<RSlab>& slabs) {
    std::vector<std::vector<int>> keys;
    keys.reserve(slabs.size());
    for (const auto& s : slabs) keys.push_back(s.canonical_key());
    return keys;
}

}  // namespace testutil
