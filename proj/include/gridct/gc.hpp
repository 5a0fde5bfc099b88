#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gridct/bgc.hpp"
#include "gridct/graph.hpp"

namespace gridct {

// Partition (C12, Su, Sv, C34): Su u Sv induces a 2 x q grid separating the
// two corner-holding components, with N(C12) = Su and N(C34) = Sv.
struct HorizontalDecomposition {
    VertexSet c12;
    std::vector<int> su;  // ordered row, su[j] ~ sv[j] and su[j] ~ su[j+1]
    std::vector<int> sv;
    VertexSet c34;
    int width() const { return static_cast<int>(su.size()); }
};

struct GuessInstance {
    int r = 0, q = 0;
    Corners corners;
};

struct AnnotatedInstance {
    int k = 0, r = 0, q = 0;
    Corners corners;
};

// Grows the 2-row strip column by column from the edge (u1, v1); at each
// step there must be exactly one admissible next pair unless `branching`
// explores all of them. Both rows of the result are separators of g.
std::optional<std::pair<std::vector<int>, std::vector<int>>> find_row_separator_grid(
    const Graph& g, int u1, int v1, bool branching = false);

// First decomposition found under edge ordering; `width` pins q when given.
std::optional<HorizontalDecomposition> find_horizontal_decomposition(
    const Graph& g, const Corners& c, std::optional<int> width = {}, bool branching = false);

struct Rr1Result {
    Graph graph;
    std::vector<int> old_to_new;
    AnnotatedInstance instance;
};

// Contracts the q vertical strip edges; r decreases by one.
Rr1Result apply_rr1(const Graph& g, const HorizontalDecomposition& d,
                    const AnnotatedInstance& inst);

// All (r, q, corners) with r, q >= 2 and |V| - k <= r*q <= |V|, one
// canonical representative per orbit of the eight grid symmetries.
std::vector<GuessInstance> enumerate_guesses(const Graph& g, int k);

struct GcOptions {
    std::optional<std::chrono::milliseconds> time_limit;
    bool branching_separator = false;
};

struct GcResult {
    bool yes = false;
    std::optional<WitnessMap> certificate;
    SolveStats stats;
    // When the decomposition loop ran, the certificate describes the reduced
    // graph; old_to_new maps original vertices onto it.
    bool reduced_form = false;
    std::optional<Graph> reduced_graph;
    std::vector<int> old_to_new;
};

// Grid Contraction: path check, bounded solves for r < 2k + 5, and the
// horizontal-decomposition loop for taller guesses.
GcResult solve(const Graph& g, int k, const GcOptions& opts = {});
GcResult solve_serial(const Graph& g, int k, const GcOptions& opts = {});

}  // namespace gridct
