#include "gridct/gc.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>

#include "gridct/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gridct {

namespace {

bool strip_column_ok(const Graph& g, const std::vector<int>& su, const std::vector<int>& sv,
                     const std::vector<char>& in_s, int u2, int v2) {
    // Appended pair may touch only the previous column inside the strip.
    for (int w : g.neighbors(u2))
        if (in_s[w] && w != su.back() && w != v2) return false;
    for (int w : g.neighbors(v2))
        if (in_s[w] && w != sv.back() && w != u2) return false;
    return true;
}

bool rows_are_separators(const Graph& g, const std::vector<int>& su, const std::vector<int>& sv) {
    VertexSet row_u(su.begin(), su.end());
    std::sort(row_u.begin(), row_u.end());
    VertexSet row_v(sv.begin(), sv.end());
    std::sort(row_v.begin(), row_v.end());
    return components(g, row_u).size() >= 2 && components(g, row_v).size() >= 2;
}

using Strip = std::pair<std::vector<int>, std::vector<int>>;

void grow_branching(const Graph& g, std::vector<int>& su, std::vector<int>& sv,
                    std::vector<char>& in_s, std::set<std::vector<int>>& seen,
                    std::vector<Strip>& out) {
    std::vector<int> state;
    state.insert(state.end(), su.begin(), su.end());
    state.insert(state.end(), sv.begin(), sv.end());
    if (!seen.insert(state).second) return;

    const int uj = su.back(), vj = sv.back();
    std::vector<std::pair<int, int>> candidates;
    for (int u2 : g.neighbors(uj)) {
        if (in_s[u2]) continue;
        for (int v2 : g.neighbors(vj)) {
            if (in_s[v2] || v2 == u2) continue;
            if (!g.has_edge(u2, v2)) continue;
            if (g.has_edge(uj, v2) || g.has_edge(vj, u2)) continue;
            candidates.emplace_back(u2, v2);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    bool extended = false;
    for (auto [u2, v2] : candidates) {
        if (!strip_column_ok(g, su, sv, in_s, u2, v2)) continue;
        su.push_back(u2);
        sv.push_back(v2);
        in_s[u2] = in_s[v2] = 1;
        grow_branching(g, su, sv, in_s, seen, out);
        in_s[u2] = in_s[v2] = 0;
        su.pop_back();
        sv.pop_back();
        extended = true;
    }
    if (!extended) out.emplace_back(su, sv);
}

}  // namespace

std::optional<Strip> find_row_separator_grid(const Graph& g, int u1, int v1, bool branching) {
    if (!g.has_edge(u1, v1)) return std::nullopt;
    std::vector<char> in_s(g.vertex_count() + 1, 0);
    std::vector<int> su = {u1}, sv = {v1};
    in_s[u1] = in_s[v1] = 1;

    if (branching) {
        std::set<std::vector<int>> seen;
        std::vector<Strip> maximal;
        grow_branching(g, su, sv, in_s, seen, maximal);
        std::vector<Strip> valid;
        for (auto& s : maximal)
            if (rows_are_separators(g, s.first, s.second)) valid.push_back(std::move(s));
        if (valid.empty()) return std::nullopt;
        std::sort(valid.begin(), valid.end(), [](const Strip& a, const Strip& b) {
            if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        });
        return valid.front();
    }

    for (;;) {
        const int uj = su.back(), vj = sv.back();
        std::vector<std::pair<int, int>> candidates;
        for (int u2 : g.neighbors(uj)) {
            if (in_s[u2]) continue;
            for (int v2 : g.neighbors(vj)) {
                if (in_s[v2] || v2 == u2) continue;
                if (!g.has_edge(u2, v2)) continue;
                if (g.has_edge(uj, v2) || g.has_edge(vj, u2)) continue;
                candidates.emplace_back(u2, v2);
            }
        }
        if (candidates.size() > 1) return std::nullopt;  // growth ambiguous
        if (candidates.empty()) break;
        auto [u2, v2] = candidates.front();
        if (!strip_column_ok(g, su, sv, in_s, u2, v2)) break;
        su.push_back(u2);
        sv.push_back(v2);
        in_s[u2] = in_s[v2] = 1;
    }
    if (!rows_are_separators(g, su, sv)) return std::nullopt;
    return std::make_pair(su, sv);
}

namespace {

// Corner-independent strip test plus corner placement; orientation of the
// rows is chosen so that N(C12) is the row adjacent to the x1/x2 side.
std::optional<HorizontalDecomposition> decomposition_from_strip(const Graph& g, const Strip& strip,
                                                                const Corners& c,
                                                                std::optional<int> width) {
    if (width && static_cast<int>(strip.first.size()) != *width) return std::nullopt;
    VertexSet sep;
    for (int v : strip.first) sep.push_back(v);
    for (int v : strip.second) sep.push_back(v);
    std::sort(sep.begin(), sep.end());
    auto comps = components(g, sep);
    if (comps.size() != 2) return std::nullopt;
    for (int x : c.as_vector())
        if (vs_contains(sep, x)) return std::nullopt;
    const VertexSet* with_x1 = vs_contains(comps[0], c.x1) ? &comps[0] : &comps[1];
    const VertexSet* other = with_x1 == &comps[0] ? &comps[1] : &comps[0];
    if (!vs_contains(*with_x1, c.x2)) return std::nullopt;
    if (!vs_contains(*other, c.x3) || !vs_contains(*other, c.x4)) return std::nullopt;

    VertexSet n12 = neighborhood(g, *with_x1);
    VertexSet n34 = neighborhood(g, *other);
    VertexSet row_u(strip.first.begin(), strip.first.end());
    std::sort(row_u.begin(), row_u.end());
    VertexSet row_v(strip.second.begin(), strip.second.end());
    std::sort(row_v.begin(), row_v.end());

    HorizontalDecomposition d;
    d.c12 = *with_x1;
    d.c34 = *other;
    if (n12 == row_u && n34 == row_v) {
        d.su = strip.first;
        d.sv = strip.second;
    } else if (n12 == row_v && n34 == row_u) {
        d.su = strip.second;
        d.sv = strip.first;
    } else {
        return std::nullopt;
    }
    return d;
}

std::vector<Strip> all_separator_strips(const Graph& g, bool branching) {
    std::vector<Strip> out;
    std::set<std::vector<int>> dedup;
    for (auto [u, v] : g.edges()) {
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
            auto strip = find_row_separator_grid(g, a, b, branching);
            if (!strip) continue;
            // canonical form over the four strip symmetries
            std::vector<std::vector<int>> encodings;
            auto enc = [](const Strip& s) {
                std::vector<int> e;
                e.insert(e.end(), s.first.begin(), s.first.end());
                e.insert(e.end(), s.second.begin(), s.second.end());
                return e;
            };
            Strip rev = *strip;
            std::reverse(rev.first.begin(), rev.first.end());
            std::reverse(rev.second.begin(), rev.second.end());
            encodings.push_back(enc(*strip));
            encodings.push_back(enc({strip->second, strip->first}));
            encodings.push_back(enc(rev));
            encodings.push_back(enc({rev.second, rev.first}));
            std::sort(encodings.begin(), encodings.end());
            if (dedup.insert(encodings.front()).second) out.push_back(*strip);
        }
    }
    return out;
}

}  // namespace

std::optional<HorizontalDecomposition> find_horizontal_decomposition(const Graph& g,
                                                                     const Corners& c,
                                                                     std::optional<int> width,
                                                                     bool branching) {
    for (auto [u, v] : g.edges()) {
        auto strip = find_row_separator_grid(g, u, v, branching);
        if (!strip) continue;
        auto d = decomposition_from_strip(g, *strip, c, width);
        if (d) return d;
    }
    return std::nullopt;
}

namespace {

void validate_decomposition(const Graph& g, const HorizontalDecomposition& d,
                            const AnnotatedInstance& inst) {
    const int n = g.vertex_count();
    const int q = d.width();
    if (q < 1 || static_cast<int>(d.sv.size()) != q)
        throw validation_error("decomposition rows have different widths");
    if (d.c12.empty() || d.c34.empty()) throw validation_error("decomposition part empty");
    std::vector<char> seen(n + 1, 0);
    auto mark = [&](int v) {
        if (v < 1 || v > n || seen[v]) throw validation_error("decomposition is not a partition");
        seen[v] = 1;
    };
    for (int v : d.c12) mark(v);
    for (int v : d.c34) mark(v);
    for (int v : d.su) mark(v);
    for (int v : d.sv) mark(v);
    for (int v = 1; v <= n; ++v)
        if (!seen[v]) throw validation_error("decomposition misses a vertex");
    if (!induces_connected(g, d.c12) || !induces_connected(g, d.c34))
        throw validation_error("decomposition side not connected");
    const auto& c = inst.corners;
    if (!vs_contains(d.c12, c.x1) || !vs_contains(d.c12, c.x2) || !vs_contains(d.c34, c.x3) ||
        !vs_contains(d.c34, c.x4))
        throw validation_error("corners not split across the decomposition");
    // strip must induce exactly the 2 x q grid
    std::vector<char> in_s(n + 1, 0);
    for (int v : d.su) in_s[v] = 1;
    for (int v : d.sv) in_s[v] = 1;
    for (int j = 0; j < q; ++j) {
        if (!g.has_edge(d.su[j], d.sv[j])) throw validation_error("strip missing vertical edge");
        if (j + 1 < q &&
            (!g.has_edge(d.su[j], d.su[j + 1]) || !g.has_edge(d.sv[j], d.sv[j + 1])))
            throw validation_error("strip missing horizontal edge");
    }
    long long strip_edges = 0;
    for (int j = 0; j < q; ++j) {
        for (int w : g.neighbors(d.su[j]))
            if (in_s[w]) ++strip_edges;
        for (int w : g.neighbors(d.sv[j]))
            if (in_s[w]) ++strip_edges;
    }
    if (strip_edges != 2LL * (3 * q - 2)) throw validation_error("strip is not an induced grid");
    VertexSet row_u(d.su.begin(), d.su.end());
    std::sort(row_u.begin(), row_u.end());
    VertexSet row_v(d.sv.begin(), d.sv.end());
    std::sort(row_v.begin(), row_v.end());
    if (neighborhood(g, d.c12) != row_u || neighborhood(g, d.c34) != row_v)
        throw validation_error("decomposition sides touch the wrong strip row");
}

}  // namespace

Rr1Result apply_rr1(const Graph& g, const HorizontalDecomposition& d,
                    const AnnotatedInstance& inst) {
    validate_decomposition(g, d, inst);
    std::vector<Edge> f;
    for (int j = 0; j < d.width(); ++j) f.emplace_back(d.su[j], d.sv[j]);
    auto [g2, old_to_new] = contract_edges(g, f);
    Rr1Result out;
    out.graph = std::move(g2);
    out.instance = inst;
    out.instance.r = inst.r - 1;
    out.instance.corners = {old_to_new[inst.corners.x1], old_to_new[inst.corners.x2],
                            old_to_new[inst.corners.x3], old_to_new[inst.corners.x4]};
    out.old_to_new = std::move(old_to_new);
    return out;
}

namespace {

struct Symmetry {
    std::array<int, 4> perm;  // new tuple position i holds old corner perm[i]
    bool swaps_dims;
};

const std::vector<Symmetry>& corner_symmetries() {
    static const std::vector<Symmetry> syms = [] {
        // generated by horizontal flip, vertical flip and transpose
        std::vector<Symmetry> out = {{{0, 1, 2, 3}, false}};
        auto compose = [](const Symmetry& a, const Symmetry& b) {
            Symmetry c{{0, 0, 0, 0}, static_cast<bool>(a.swaps_dims ^ b.swaps_dims)};
            for (int i = 0; i < 4; ++i) c.perm[i] = b.perm[a.perm[i]];
            return c;
        };
        const Symmetry h{{1, 0, 3, 2}, false};
        const Symmetry v{{3, 2, 1, 0}, false};
        const Symmetry t{{0, 3, 2, 1}, true};
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t i = 0; i < out.size(); ++i)
                for (const auto& gsym : {h, v, t}) {
                    Symmetry c = compose(out[i], gsym);
                    bool known = false;
                    for (const auto& e : out)
                        if (e.perm == c.perm && e.swaps_dims == c.swaps_dims) known = true;
                    if (!known) {
                        out.push_back(c);
                        grew = true;
                    }
                }
        }
        return out;
    }();
    return syms;
}

std::array<int, 6> guess_encoding(int r, int q, const std::array<int, 4>& xs) {
    return {r, q, xs[0], xs[1], xs[2], xs[3]};
}

bool is_canonical_guess(int r, int q, const std::array<int, 4>& xs) {
    auto self = guess_encoding(r, q, xs);
    for (const auto& sym : corner_symmetries()) {
        std::array<int, 4> mapped;
        for (int i = 0; i < 4; ++i) mapped[i] = xs[sym.perm[i]];
        auto enc = sym.swaps_dims ? guess_encoding(q, r, mapped) : guess_encoding(r, q, mapped);
        if (enc < self) return false;
    }
    return true;
}

std::vector<Corners> canonical_corner_tuples(int n, int r, int q) {
    std::vector<Corners> out;
    for (int x1 = 1; x1 <= n; ++x1)
        for (int x2 = 1; x2 <= n; ++x2)
            for (int x3 = 1; x3 <= n; ++x3)
                for (int x4 = 1; x4 <= n; ++x4) {
                    Corners c{x1, x2, x3, x4};
                    if (!c.distinct()) continue;
                    if (is_canonical_guess(r, q, {x1, x2, x3, x4})) out.push_back(c);
                }
    return out;
}

std::vector<std::pair<int, int>> admissible_dimensions(int n, int k) {
    std::vector<std::pair<int, int>> out;
    for (int r = 2; r <= n; ++r)
        for (int q = 2; q <= n; ++q) {
            const long long cells = static_cast<long long>(r) * q;
            if (cells <= n && cells >= n - k) out.emplace_back(r, q);
        }
    return out;
}

}  // namespace

std::vector<GuessInstance> enumerate_guesses(const Graph& g, int k) {
    std::vector<GuessInstance> out;
    for (auto [r, q] : admissible_dimensions(g.vertex_count(), k))
        for (const auto& c : canonical_corner_tuples(g.vertex_count(), r, q))
            out.push_back({r, q, c});
    return out;
}

namespace {

struct StripMemo {
    bool branching;
    std::map<std::vector<int>, std::vector<Strip>> by_graph;

    const std::vector<Strip>& get(const Graph& g) {
        std::vector<int> key;
        key.push_back(g.vertex_count());
        for (auto [u, v] : g.edges()) {
            key.push_back(u);
            key.push_back(v);
        }
        auto it = by_graph.find(key);
        if (it != by_graph.end()) return it->second;
        return by_graph.emplace(std::move(key), all_separator_strips(g, branching)).first->second;
    }
};

// Reduce r with RR1 until the bounded threshold, then solve annotated.
struct TallGuessOutcome {
    bool yes = false;
    SolveResult inner;
    Graph reduced;
    std::vector<int> old_to_new;
};

std::optional<TallGuessOutcome> run_tall_guess(const Graph& g, int k, AnnotatedInstance inst,
                                               StripMemo& memo, const GcOptions& opts,
                                               SolveStats& stats) {
    Graph cur = g;
    std::vector<int> composed(g.vertex_count() + 1);
    for (int v = 0; v <= g.vertex_count(); ++v) composed[v] = v;
    while (inst.r >= 2 * k + 5) {
        const auto& strips = memo.get(cur);
        std::optional<HorizontalDecomposition> d;
        for (const auto& strip : strips) {
            d = decomposition_from_strip(cur, strip, inst.corners, inst.q);
            if (d) break;
        }
        if (!d) return std::nullopt;  // no horizontal decomposition: guess is NO
        auto rr1 = apply_rr1(cur, *d, inst);
        for (int v = 1; v <= g.vertex_count(); ++v) composed[v] = rr1.old_to_new[composed[v]];
        cur = std::move(rr1.graph);
        inst = rr1.instance;
    }
    SolveOptions so;
    so.time_limit = opts.time_limit;
    auto res = solve_annotated(cur, inst.k, inst.r, inst.q, inst.corners, so);
    stats.absorb(res.stats);
    if (!res.yes) return std::nullopt;
    TallGuessOutcome out;
    out.yes = true;
    out.inner = std::move(res);
    out.reduced = std::move(cur);
    out.old_to_new = std::move(composed);
    return out;
}

GcResult solve_impl(const Graph& g, int k, const GcOptions& opts, bool parallel) {
    GcResult result;
    if (g.vertex_count() == 0 || !g.is_connected()) return result;  // immediate NO

    SolveOptions so;
    so.time_limit = opts.time_limit;
    auto path_res = solve_path(g, k, so);
    result.stats.absorb(path_res.stats);
    if (path_res.yes) {
        result.yes = true;
        result.certificate = std::move(path_res.certificate);
        return result;
    }

    const int n = g.vertex_count();
    auto dims = admissible_dimensions(n, k);
    std::vector<int> small_rs;
    for (auto [r, q] : dims)
        if (r < 2 * k + 5) small_rs.push_back(r);
    std::sort(small_rs.begin(), small_rs.end());
    small_rs.erase(std::unique(small_rs.begin(), small_rs.end()), small_rs.end());

    // Bounded solves decide "some q" per row count, so one run per r.
    // Row counts are processed in order with early exit; the parallel path
    // works through them in thread-sized chunks so the returned verdict and
    // certificate match the serial ones.
    const size_t chunk = parallel ? static_cast<size_t>(std::max(1, par::effective_threads())) : 1;
    for (size_t base = 0; base < small_rs.size(); base += chunk) {
        const size_t stop = std::min(small_rs.size(), base + chunk);
        std::vector<SolveResult> results(stop - base);
        if (parallel && stop - base > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(par::effective_threads())
#endif
            for (size_t i = base; i < stop; ++i)
                results[i - base] = solve_bounded(g, k, small_rs[i], so);
        } else {
            for (size_t i = base; i < stop; ++i)
                results[i - base] = solve_bounded(g, k, small_rs[i], so);
        }
        for (auto& res : results) {
            result.stats.absorb(res.stats);
            if (res.yes && !result.yes) {
                result.yes = true;
                result.certificate = std::move(res.certificate);
            }
        }
        if (result.yes) return result;
    }

    StripMemo memo{opts.branching_separator, {}};
    for (auto [r, q] : dims) {
        if (r < 2 * k + 5) continue;
        for (const auto& corners : canonical_corner_tuples(n, r, q)) {
            auto outcome = run_tall_guess(g, k, {k, r, q, corners}, memo, opts, result.stats);
            if (outcome) {
                result.yes = true;
                result.certificate = std::move(outcome->inner.certificate);
                result.reduced_form = true;
                result.reduced_graph = std::move(outcome->reduced);
                result.old_to_new = std::move(outcome->old_to_new);
                return result;
            }
        }
    }
    return result;
}

}  // namespace

GcResult solve_serial(const Graph& g, int k, const GcOptions& opts) {
    return solve_impl(g, k, opts, false);
}

GcResult solve(const Graph& g, int k, const GcOptions& opts) {
    const bool parallel = par::threads() != 1 && par::openmp_available();
    return solve_impl(g, k, opts, parallel);
}

}  // namespace gridct
