#pragma once

#include <optional>
#include <string>

#include "gridct/gen.hpp"
#include "gridct/graph.hpp"

namespace gridct {

struct VerifyResult {
    bool accepted = false;
    std::string reason;  // violated invariant on reject
};

// Checks every witness-map invariant plus cost = |V| - rows*cols <= k.
VerifyResult verify_witness(const Graph& g, const WitnessMap& w, int k);

enum class GridTarget {
    any,      // every grid, paths and the single vertex included
    min_two,  // rows >= 2 and cols >= 2
    path      // one-row grids only
};

struct Verdict {
    enum class Answer { yes, no, budget };
    Answer answer = Answer::no;
    std::optional<WitnessMap> witness;
    long long explored = 0;  // contraction sets examined
};

struct OracleOptions {
    long long budget = -1;  // -1: use GRIDCTL_BUDGET or the built-in default
    GridTarget target = GridTarget::any;
    bool reverse_order = false;  // enumerate subsets of each size backwards
};

// Exhaustive search over edge subsets F with |F| <= k, by increasing size,
// accepting when G/F is a grid of the requested kind. Counts every examined
// subset against the budget and reports `budget` instead of guessing.
Verdict brute_force_grid(const Graph& g, int k, const OracleOptions& opts = {});
Verdict brute_force_grid_serial(const Graph& g, int k, const OracleOptions& opts = {});

// Exhaustive NAE-SAT over all assignments; at most 20 variables.
bool brute_force_nae(const NaeFormula& f);

// Exhaustive proper 2-coloring check (every edge sees both colors).
bool brute_force_hypergraph_2col(const Hypergraph& h);

long long default_oracle_budget();

}  // namespace gridct
