#include "gridct/gen.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace gridct {

namespace {

// splitmix64; fixed algorithm so generated instances are identical across
// platforms and standard-library versions.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) {
        // rejection sampling for an unbiased bounded draw
        std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    bool coin() { return next() & 1ULL; }
};

void validate_formula(const NaeFormula& f) {
    for (const auto& clause : f.clauses) {
        if (clause.empty()) throw validation_error("empty clause");
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                throw validation_error("literal out of range");
    }
}

}  // namespace

NaeFormula sat3_to_nae(const CnfFormula& f) {
    validate_formula(f);
    NaeFormula out;
    out.variable_count = f.variable_count + 1;
    const int shared = out.variable_count;
    out.clauses = f.clauses;
    for (auto& clause : out.clauses) clause.push_back(shared);
    return out;
}

Hypergraph nae_to_hypergraph(const NaeFormula& f) {
    validate_formula(f);
    Hypergraph h;
    h.vertex_count = 2 * f.variable_count;
    for (int v = 1; v <= f.variable_count; ++v) h.edges.push_back({2 * v - 1, 2 * v});
    for (const auto& clause : f.clauses) {
        VertexSet e;
        for (int lit : clause) vs_insert(e, lit > 0 ? 2 * lit - 1 : -2 * lit);
        h.edges.push_back(std::move(e));
    }
    return h;
}

C4Instance hypergraph_to_c4_instance(const Hypergraph& h) {
    if (h.vertex_count < 1) throw validation_error("empty hypergraph");
    const int nh = h.vertex_count;
    for (const auto& e : h.edges) {
        if (e.empty()) throw validation_error("empty hyperedge");
        for (int v : e)
            if (v < 1 || v > nh) throw validation_error("hyperedge vertex out of range");
    }
    std::vector<VertexSet> edges = h.edges;
    bool added = false;
    VertexSet universe(nh);
    for (int v = 1; v <= nh; ++v) universe[v - 1] = v;
    bool has_universal = false;
    for (const auto& e : edges)
        if (e == universe) has_universal = true;
    if (!has_universal) {
        edges.push_back(universe);
        added = true;
    }
    while (edges.size() < 2) {
        edges.push_back(universe);
        added = true;
    }

    const int mh = static_cast<int>(edges.size());
    auto e1_id = [nh](int i) { return nh + 1 + i; };             // i in [0, mh)
    auto e2_id = [nh, mh](int i) { return nh + mh + 1 + i; };
    const int v1 = nh + 2 * mh + 1;
    const int v2 = nh + 2 * mh + 2;

    std::vector<Edge> ge;
    for (int a = 1; a <= nh; ++a)
        for (int b = a + 1; b <= nh; ++b) ge.emplace_back(a, b);
    for (int i = 0; i < mh; ++i)
        for (int j = 0; j < mh; ++j) ge.emplace_back(e1_id(i), e2_id(j));
    for (int i = 0; i < mh; ++i)
        for (int x : edges[i]) {
            ge.emplace_back(x, e1_id(i));
            ge.emplace_back(x, e2_id(i));
        }
    for (int i = 0; i < mh; ++i) {
        ge.emplace_back(v1, e1_id(i));
        ge.emplace_back(v2, e2_id(i));
    }
    ge.emplace_back(v1, v2);

    C4Instance out;
    out.graph = from_edge_list(v2, ge);
    out.k = v2 - 4;
    out.universal_edge_added = added;
    return out;
}

SplitGridInstance split_grid(int r, int q, int k, std::uint64_t seed) {
    if (r < 1 || q < 1) throw validation_error("grid dimensions must be positive");
    if (k < 0) throw validation_error("k must be nonnegative");
    Rng rng(seed);
    int n = r * q;
    std::vector<std::set<int>> adj(n + 1 + k);
    auto id = [q](int i, int j) { return (i - 1) * q + j; };
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= q; ++j) {
            if (j < q) {
                adj[id(i, j)].insert(id(i, j + 1));
                adj[id(i, j + 1)].insert(id(i, j));
            }
            if (i < r) {
                adj[id(i, j)].insert(id(i + 1, j));
                adj[id(i + 1, j)].insert(id(i, j));
            }
        }
    std::vector<std::pair<int, int>> planted(n + 1 + k);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= q; ++j) planted[id(i, j)] = {i, j};

    for (int step = 0; step < k; ++step) {
        const int v = static_cast<int>(rng.below(n)) + 1;
        const int nv = ++n;
        std::vector<int> nbrs(adj[v].begin(), adj[v].end());
        for (int w : nbrs)
            if (rng.coin()) {
                adj[v].erase(w);
                adj[w].erase(v);
                adj[nv].insert(w);
                adj[w].insert(nv);
            }
        adj[v].insert(nv);
        adj[nv].insert(v);
        planted[nv] = planted[v];
    }

    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u)
        for (int w : adj[u])
            if (u < w) edges.emplace_back(u, w);

    SplitGridInstance out;
    out.graph = from_edge_list(n, edges);
    out.k = k;
    out.planted.rows = r;
    out.planted.cols = q;
    out.planted.resize(n);
    for (int v = 1; v <= n; ++v) out.planted.cell[v] = planted[v];
    return out;
}

Graph random_graph(int n, long long m, std::uint64_t seed, bool connected) {
    if (n < 0) throw validation_error("vertex count must be nonnegative");
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > max_edges) throw validation_error("edge count out of range");
    if (connected && n > 0 && m < n - 1)
        throw validation_error("too few edges for a connected graph");
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<size_t>(max_edges));
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
    Rng rng(seed);
    for (int attempt = 0; attempt < 200000; ++attempt) {
        // partial Fisher-Yates: the first m entries are a uniform m-subset
        for (long long i = 0; i < m; ++i) {
            long long j = i + static_cast<long long>(rng.below(pairs.size() - i));
            std::swap(pairs[i], pairs[j]);
        }
        Graph g = from_edge_list(n, {pairs.begin(), pairs.begin() + m});
        if (!connected || g.is_connected()) return g;
    }
    throw validation_error("could not sample a connected graph with the given parameters");
}

NaeFormula parse_cnf(std::istream& in) {
    NaeFormula f;
    std::string line;
    bool header = false;
    int clause_count = -1;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            if (!(ls >> p >> fmt >> f.variable_count >> clause_count) || fmt != "cnf")
                throw parse_error("bad DIMACS header");
            header = true;
            continue;
        }
        if (!header) throw parse_error("clause before DIMACS header");
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > f.variable_count) throw parse_error("literal out of range");
                current.push_back(lit);
            }
        }
    }
    if (!header) throw parse_error("missing DIMACS header");
    if (!current.empty()) throw parse_error("unterminated clause");
    if (clause_count >= 0 && static_cast<int>(f.clauses.size()) != clause_count)
        throw parse_error("clause count mismatch");
    for (const auto& clause : f.clauses)
        if (clause.empty()) throw parse_error("empty clause");
    return f;
}

void write_cnf(std::ostream& out, const NaeFormula& f) {
    out << "p cnf " << f.variable_count << " " << f.clauses.size() << "\n";
    for (const auto& clause : f.clauses) {
        for (int lit : clause) out << lit << " ";
        out << "0\n";
    }
}

Hypergraph parse_hypergraph(std::istream& in) {
    Hypergraph h;
    std::string line;
    bool header = false;
    int edge_count = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string fmt;
            if (!(ls >> fmt >> h.vertex_count >> edge_count) || fmt != "hyp")
                throw parse_error("bad hypergraph header");
            header = true;
        } else if (tag == "h") {
            if (!header) throw parse_error("edge before header");
            int size;
            if (!(ls >> size) || size < 1) throw parse_error("bad hyperedge size");
            VertexSet e;
            for (int i = 0; i < size; ++i) {
                int v;
                if (!(ls >> v)) throw parse_error("truncated hyperedge");
                if (v < 1 || v > h.vertex_count) throw parse_error("hyperedge vertex out of range");
                vs_insert(e, v);
            }
            h.edges.push_back(std::move(e));
        } else {
            throw parse_error("unknown line type '" + tag + "'");
        }
    }
    if (!header) throw parse_error("missing hypergraph header");
    if (edge_count >= 0 && static_cast<int>(h.edges.size()) != edge_count)
        throw parse_error("edge count mismatch");
    return h;
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << "p hyp " << h.vertex_count << " " << h.edges.size() << "\n";
    for (const auto& e : h.edges) {
        out << "h " << e.size();
        for (int v : e) out << " " << v;
        out << "\n";
    }
}

}  // namespace gridct
