#include "gridct/bgc.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "gridct/errors.hpp"

namespace gridct {

void SolveStats::absorb(const SolveStats& o) {
    valid_tuples += o.valid_tuples;
    table_indices += o.table_indices;
    true_entries += o.true_entries;
    extender_calls += o.extender_calls;
    extenders_enumerated += o.extenders_enumerated;
    peak_extender_batch = std::max(peak_extender_batch, o.peak_extender_batch);
    dropped_updates += o.dropped_updates;
    elapsed_ms += o.elapsed_ms;
}

std::vector<int> ValidTuple::key() const {
    std::vector<int> key;
    key.push_back(static_cast<int>(s.size()));
    key.insert(key.end(), s.begin(), s.end());
    auto sk = slab.slab.canonical_key();
    key.insert(key.end(), sk.begin(), sk.end());
    return key;
}

std::vector<PotentialSlab> enumerate_potential_slabs(const Graph& g, int k, int r) {
    const int budget = k + 3 * r;
    std::vector<PotentialSlab> out;
    for (const auto& slab : enumerate_all(g, r, budget, budget, budget)) {
        VertexSet d = slab.all();
        VertexSet nd = neighborhood(g, d);
        if (slab.size() + static_cast<int>(nd.size()) > budget) continue;
        if (components(g, d).size() > 2) continue;
        out.push_back({slab, static_cast<int>(nd.size())});
    }
    return out;
}

std::vector<ValidTuple> enumerate_valid_tuples(const Graph& g, int k, int r) {
    std::vector<ValidTuple> out;
    for (const auto& ps : enumerate_potential_slabs(g, k, r)) {
        VertexSet d = ps.slab.all();
        auto comps = components(g, d);
        if (comps.empty() || comps.size() == 1) out.push_back({d, ps});
        for (const auto& c : comps) out.push_back({vs_union(c, d), ps});
    }
    return out;
}

namespace {

struct KeyHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b9;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

struct Pred {
    int parent_tuple = -1;
    int parent_k = 0;
    RSlab extender;
};

struct Entry {
    std::vector<int> cols;                 // reachable q', sorted
    std::map<int, Pred> preds;             // per q'

    bool has(int q) const { return std::binary_search(cols.begin(), cols.end(), q); }
};

struct ExtEntry {
    RSlab slab;
    int target = -1;  // tuple id of (S u A, P_r(A)), -1 when not a valid tuple
};

struct TupleInfo {
    ValidTuple tuple;
    VertexSet neighborhood;  // N(S)
    int d_size = 0;
    bool s_is_all = false;
    bool batch_ready = false;
    bool batch_dead = false;  // some N(D_i) \ S empty or seeds overlap
    std::map<std::pair<int, int>, std::vector<ExtEntry>> batch;  // (a, b) -> extenders
};

struct AnnotatedSpec {
    int q = 0;
    Corners corners;
};

struct Dp {
    const Graph& g;
    int k, r, n;
    const SolveOptions& opts;
    const AnnotatedSpec* annotated;
    SolveStats stats;
    std::vector<TupleInfo> tuples;
    std::unordered_map<std::vector<int>, int, KeyHash> index;
    std::vector<Entry> table;  // tuple * (k+1) + k'
    std::chrono::steady_clock::time_point started, deadline;
    bool has_deadline = false;

    Dp(const Graph& graph, int kk, int rr, const SolveOptions& o, const AnnotatedSpec* ann)
        : g(graph), k(kk), r(rr), n(graph.vertex_count()), opts(o), annotated(ann) {
        started = std::chrono::steady_clock::now();
        if (opts.time_limit) {
            deadline = started + *opts.time_limit;
            has_deadline = true;
        }
    }

    void check_deadline() const {
        if (has_deadline && std::chrono::steady_clock::now() > deadline)
            throw timeout_error("solve time limit exceeded");
    }

    Entry& at(int tid, int kp) { return table[static_cast<size_t>(tid) * (k + 1) + kp]; }

    bool slab_contains(const RSlab& s, int v) const { return s.contains(v); }

    bool init_allowed(const TupleInfo& info) const {
        if (!annotated) return true;
        const auto& d = info.tuple.slab.slab;
        const auto& c = annotated->corners;
        if (!vs_contains(d.parts.front(), c.x1)) return false;
        if (!vs_contains(d.parts.back(), c.x4)) return false;
        if (slab_contains(d, c.x2) || slab_contains(d, c.x3)) return false;
        return true;
    }

    bool extender_allowed(const RSlab& a) const {
        if (!annotated) return true;
        return !a.contains(annotated->corners.x1) && !a.contains(annotated->corners.x4);
    }

    void build_tuples() {
        auto raw = enumerate_valid_tuples(g, k, r);
        tuples.reserve(raw.size());
        for (auto& t : raw) {
            TupleInfo info;
            info.neighborhood = neighborhood(g, t.s);
            info.d_size = t.slab.slab.size();
            info.s_is_all = static_cast<int>(t.s.size()) == n;
            info.tuple = std::move(t);
            tuples.push_back(std::move(info));
        }
        std::sort(tuples.begin(), tuples.end(), [](const TupleInfo& a, const TupleInfo& b) {
            if (a.tuple.s.size() != b.tuple.s.size()) return a.tuple.s.size() < b.tuple.s.size();
            if (a.d_size != b.d_size) return a.d_size < b.d_size;
            return a.tuple.key() < b.tuple.key();
        });
        for (size_t i = 0; i < tuples.size(); ++i) index[tuples[i].tuple.key()] = static_cast<int>(i);
        table.assign(tuples.size() * (k + 1), {});
        stats.valid_tuples = static_cast<long long>(tuples.size());
        stats.table_indices = static_cast<long long>(tuples.size()) * (k + 1);
    }

    void initialize() {
        for (size_t tid = 0; tid < tuples.size(); ++tid) {
            const auto& info = tuples[tid];
            if (static_cast<int>(info.tuple.s.size()) != info.d_size) continue;  // S != D
            if (!init_allowed(info)) continue;
            const int ns = static_cast<int>(info.neighborhood.size());
            for (int kp = std::max(0, info.d_size - r); kp <= k; ++kp) {
                if (kp + ns - r > k) break;
                set_reachable(static_cast<int>(tid), kp, 1, -1, -1, {});
            }
        }
    }

    void set_reachable(int tid, int kp, int q, int parent_tid, int parent_k, const RSlab& ext) {
        Entry& e = at(tid, kp);
        auto it = std::lower_bound(e.cols.begin(), e.cols.end(), q);
        if (it != e.cols.end() && *it == q) return;
        if (e.cols.empty()) ++stats.true_entries;
        e.cols.insert(it, q);
        if (parent_tid >= 0) e.preds.emplace(q, Pred{parent_tid, parent_k, ext});
    }

    // One seeded enumeration per tuple covers every (a, b) class; results are
    // classified by exact size and exact outside-neighbor count.
    void build_batch(TupleInfo& info) {
        info.batch_ready = true;
        const auto& d = info.tuple.slab.slab;
        SeedPartition seed;
        seed.parts.resize(r);
        VertexSet seen;
        for (int i = 0; i < r; ++i) {
            VertexSet q = vs_difference(neighborhood(g, d.parts[i]), info.tuple.s);
            if (q.empty()) {
                info.batch_dead = true;  // column row with no outside neighbor cannot extend
                return;
            }
            if (!vs_disjoint(seen, q)) {
                info.batch_dead = true;  // a vertex demanded by two different rows
                return;
            }
            seen = vs_union(seen, q);
            seed.parts[i] = std::move(q);
        }
        const int alpha = k + 3 * r - info.d_size;
        const int beta = alpha - r;
        if (alpha < r || beta < 0) {
            info.batch_dead = true;
            return;
        }
        ++stats.extender_calls;
        auto slabs = enumerate_seeded(g, seed, alpha, beta, info.tuple.s, alpha);
        stats.extenders_enumerated += static_cast<long long>(slabs.size());
        stats.peak_extender_batch =
            std::max(stats.peak_extender_batch, static_cast<long long>(slabs.size()));
        for (auto& a : slabs) {
            if (!is_r_slab(g, a)) continue;  // must be a slab in the full graph
            VertexSet av = a.all();
            const int asize = static_cast<int>(av.size());
            const int bsize =
                static_cast<int>(vs_difference(neighborhood(g, av), info.tuple.s).size());
            if (asize + bsize + info.d_size > k + 3 * r) continue;
            ExtEntry ee;
            ValidTuple probe;
            probe.s = vs_union(info.tuple.s, av);
            probe.slab.slab = a;
            auto it = index.find(probe.key());
            if (it == index.end()) {
                ++stats.dropped_updates;
                ee.target = -1;
            } else {
                ee.target = it->second;
            }
            ee.slab = std::move(a);
            info.batch[{asize, bsize}].push_back(std::move(ee));
        }
    }

    void process(int tid, int kp) {
        TupleInfo& info = tuples[tid];
        const Entry& entry = at(tid, kp);
        if (entry.cols.empty()) return;
        if (info.s_is_all) return;
        if (!info.batch_ready) build_batch(info);
        if (info.batch_dead) return;
        const int ns = static_cast<int>(info.neighborhood.size());
        for (const auto& [ab, extenders] : info.batch) {
            const auto [a, b] = ab;
            if (a < r || a < ns) continue;
            if (kp + a - r > k) continue;
            for (const auto& ext : extenders) {
                if (ext.target < 0) continue;
                if (!extender_allowed(ext.slab)) continue;
                const int target_ns =
                    static_cast<int>(tuples[ext.target].neighborhood.size());
                for (int k1 = kp + (a - r); k1 <= k; ++k1) {
                    if (k1 + target_ns - r > k) break;
                    for (int q : entry.cols) set_reachable(ext.target, k1, q + 1, tid, kp, ext.slab);
                }
            }
        }
    }

    void run() {
        build_tuples();
        initialize();
        for (size_t tid = 0; tid < tuples.size(); ++tid) {
            check_deadline();
            for (int kp = 0; kp <= k; ++kp) process(static_cast<int>(tid), kp);
        }
    }

    bool accept_tuple(const TupleInfo& info) const {
        if (!info.s_is_all) return false;
        if (!annotated) return true;
        const auto& d = info.tuple.slab.slab;
        const auto& c = annotated->corners;
        return vs_contains(d.parts.front(), c.x2) && vs_contains(d.parts.back(), c.x3);
    }

    std::optional<std::tuple<int, int, int>> find_accept() const {
        for (size_t tid = 0; tid < tuples.size(); ++tid) {
            if (!accept_tuple(tuples[tid])) continue;
            for (int kp = 0; kp <= k; ++kp) {
                const Entry& e = table[tid * (k + 1) + kp];
                if (e.cols.empty()) continue;
                if (annotated) {
                    if (e.has(annotated->q))
                        return std::make_tuple(static_cast<int>(tid), kp, annotated->q);
                } else {
                    return std::make_tuple(static_cast<int>(tid), kp, e.cols.front());
                }
            }
        }
        return std::nullopt;
    }

    WitnessMap reconstruct(int tid, int kp, int q) {
        std::vector<RSlab> columns(q);
        int cur_tid = tid, cur_k = kp, cur_q = q;
        while (cur_q > 1) {
            const Entry& e = at(cur_tid, cur_k);
            auto it = e.preds.find(cur_q);
            assert(it != e.preds.end());
            columns[cur_q - 1] = it->second.extender;
            cur_tid = it->second.parent_tuple;
            cur_k = it->second.parent_k;
            --cur_q;
        }
        columns[0] = tuples[cur_tid].tuple.slab.slab;
        WitnessMap w;
        w.rows = r;
        w.cols = q;
        w.resize(n);
        for (int col = 1; col <= q; ++col)
            for (int row = 1; row <= r; ++row)
                for (int v : columns[col - 1].parts[row - 1]) w.cell[v] = {row, col};
        return w;
    }

    void fill_dump() {
        if (!opts.dump) return;
        for (size_t tid = 0; tid < tuples.size(); ++tid)
            for (int kp = 0; kp <= k; ++kp) {
                const Entry& e = table[tid * (k + 1) + kp];
                if (e.cols.empty()) continue;
                TableDump::Row row;
                row.s = tuples[tid].tuple.s;
                row.slab = tuples[tid].tuple.slab.slab;
                row.neighborhood_size = static_cast<int>(tuples[tid].neighborhood.size());
                row.kprime = kp;
                row.reachable_cols = e.cols;
                opts.dump->rows.push_back(std::move(row));
            }
    }
};

SolveResult run_dp(const Graph& g, int k, int r, const SolveOptions& opts,
                   const AnnotatedSpec* annotated) {
    if (!g.is_connected() || g.vertex_count() == 0)
        throw validation_error("solver requires a connected nonempty graph");
    if (k < 0 || r < 1) throw validation_error("k must be >= 0 and r >= 1");
    Dp dp(g, k, r, opts, annotated);
    SolveResult result;
    dp.run();
    auto hit = dp.find_accept();
    if (hit) {
        result.yes = true;
        auto [tid, kp, q] = *hit;
        result.certificate = dp.reconstruct(tid, kp, q);
    }
    dp.fill_dump();
    dp.stats.elapsed_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - dp.started)
                              .count();
    result.stats = dp.stats;
    return result;
}

}  // namespace

std::vector<RSlab> compute_extenders(const Graph& g, const ValidTuple& t, int a, int b, int k,
                                     int r) {
    if (a < r || b < 0 || a + b + t.slab.slab.size() > k + 3 * r) return {};
    const auto& d = t.slab.slab;
    SeedPartition seed;
    seed.parts.resize(r);
    VertexSet seen;
    for (int i = 0; i < r; ++i) {
        VertexSet q = vs_difference(neighborhood(g, d.parts[i]), t.s);
        if (q.empty() || !vs_disjoint(seen, q)) return {};
        seen = vs_union(seen, q);
        seed.parts[i] = std::move(q);
    }
    std::vector<RSlab> out;
    for (auto& slab : enumerate_seeded(g, seed, a, b, t.s, a + b)) {
        if (!is_r_slab(g, slab)) continue;
        VertexSet av = slab.all();
        if (static_cast<int>(av.size()) != a) continue;
        if (static_cast<int>(vs_difference(neighborhood(g, av), t.s).size()) != b) continue;
        out.push_back(std::move(slab));
    }
    return out;
}

SolveResult solve_bounded(const Graph& g, int k, int r, const SolveOptions& opts) {
    if (k < 0 || r < 1) throw validation_error("k must be >= 0 and r >= 1");
    // an r-row grid reachable by <= k contractions has r*q vertices in
    // [n - k, n] for some q >= 1
    const int n = g.vertex_count();
    bool some_q = false;
    for (int q = 1; static_cast<long long>(r) * q <= n; ++q)
        if (static_cast<long long>(r) * q >= n - k) some_q = true;
    if (!some_q) {
        if (!g.is_connected() || n == 0)
            throw validation_error("solver requires a connected nonempty graph");
        return {};
    }
    return run_dp(g, k, r, opts, nullptr);
}

SolveResult solve_annotated(const Graph& g, int k, int r, int q, const Corners& c,
                            const SolveOptions& opts) {
    if (r < 2 || q < 2) throw validation_error("annotated solve requires r, q >= 2");
    if (!c.distinct()) throw validation_error("corners must be pairwise distinct");
    for (int x : c.as_vector())
        if (x < 1 || x > g.vertex_count()) throw validation_error("corner out of range");
    const long long cells = static_cast<long long>(r) * q;
    if (cells > g.vertex_count() || cells < g.vertex_count() - k) return {};  // NO by counting
    AnnotatedSpec spec{q, c};
    return run_dp(g, k, r, opts, &spec);
}

SolveResult solve_path(const Graph& g, int k, const SolveOptions& opts) {
    return run_dp(g, k, 1, opts, nullptr);
}

void write_certificate(std::ostream& out, const Certificate& c,
                       const std::vector<std::string>& comments) {
    for (const auto& line : comments) out << "c " << line << "\n";
    if (!c.yes) {
        out << "s NO\n";
        return;
    }
    if (c.reduced_form) out << "c reduced-form\n";
    out << "s YES " << c.map.rows << " " << c.map.cols << " " << c.cost << "\n";
    for (size_t v = 1; v < c.map.cell.size(); ++v)
        out << "w " << v << " " << c.map.cell[v].first << " " << c.map.cell[v].second << "\n";
}

Certificate parse_certificate(std::istream& in) {
    Certificate c;
    std::string line;
    bool have_s = false;
    std::vector<std::tuple<int, int, int>> assigns;
    int max_vertex = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "c") {
            std::string rest;
            std::getline(ls, rest);
            if (rest.find("reduced-form") != std::string::npos) c.reduced_form = true;
        } else if (tag == "s") {
            std::string verdict;
            if (!(ls >> verdict)) throw parse_error("bad verdict line");
            if (verdict == "NO") {
                c.yes = false;
            } else if (verdict == "YES") {
                c.yes = true;
                if (!(ls >> c.map.rows >> c.map.cols >> c.cost))
                    throw parse_error("bad YES header");
            } else {
                throw parse_error("unknown verdict '" + verdict + "'");
            }
            have_s = true;
        } else if (tag == "w") {
            int v, i, j;
            if (!(ls >> v >> i >> j)) throw parse_error("bad witness line");
            if (v < 1) throw parse_error("bad vertex in witness line");
            assigns.emplace_back(v, i, j);
            max_vertex = std::max(max_vertex, v);
        } else {
            throw parse_error("unknown line type '" + tag + "'");
        }
    }
    if (!have_s) throw parse_error("missing verdict line");
    if (c.yes) {
        c.map.resize(max_vertex);
        for (auto [v, i, j] : assigns) c.map.cell[v] = {i, j};
    }
    return c;
}

}  // namespace gridct
