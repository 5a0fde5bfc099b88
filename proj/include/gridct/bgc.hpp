#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gridct/graph.hpp"
#include "gridct/slab.hpp"

namespace gridct {

// r-slab D with |D| + |N(D)| <= k + 3r and at most two components in G - D;
// a candidate grid column.
struct PotentialSlab {
    RSlab slab;
    int neighborhood_size = 0;
};

// DP state: a column-prefix vertex set S with a responsible column slab.
struct ValidTuple {
    VertexSet s;
    PotentialSlab slab;
    std::vector<int> key() const;
};

struct SolveStats {
    long long valid_tuples = 0;
    long long table_indices = 0;         // |V_k| * (k + 1)
    long long true_entries = 0;          // indices that became reachable
    long long extender_calls = 0;        // seeded enumerations run
    long long extenders_enumerated = 0;  // slabs returned by those runs
    long long peak_extender_batch = 0;
    long long dropped_updates = 0;       // extenders whose target tuple is invalid
    double elapsed_ms = 0.0;

    void absorb(const SolveStats& o);
};

struct SolveResult {
    bool yes = false;
    std::optional<WitnessMap> certificate;
    SolveStats stats;
};

// Full table contents for invariant tests.
struct TableDump {
    struct Row {
        VertexSet s;
        RSlab slab;
        int neighborhood_size = 0;
        int kprime = 0;
        std::vector<int> reachable_cols;
    };
    std::vector<Row> rows;
};

struct SolveOptions {
    std::optional<std::chrono::milliseconds> time_limit;
    TableDump* dump = nullptr;
};

std::vector<PotentialSlab> enumerate_potential_slabs(const Graph& g, int k, int r);
std::vector<ValidTuple> enumerate_valid_tuples(const Graph& g, int k, int r);

// Extender columns for tuple t: r-slabs of G inside V \ S with |A| = a,
// |N(A) \ S| = b, N(D_i) \ S nonempty and contained in A_i for every i.
std::vector<RSlab> compute_extenders(const Graph& g, const ValidTuple& t, int a, int b, int k,
                                     int r);

// Is g k-contractible to a grid with exactly r rows (any column count)?
SolveResult solve_bounded(const Graph& g, int k, int r, const SolveOptions& opts = {});

// Corner-annotated variant: target is exactly r x q with witness cells of
// x1..x4 at [1,1], [1,q], [r,q], [r,1].
SolveResult solve_annotated(const Graph& g, int k, int r, int q, const Corners& c,
                            const SolveOptions& opts = {});

// Path contraction: the r = 1 instantiation.
SolveResult solve_path(const Graph& g, int k, const SolveOptions& opts = {});

// Witness certificate text format:
//   s YES <r> <q> <cost>
//   w <vertex> <row> <col>
// or the single line `s NO`. Comment lines `c ...` are ignored on read.
struct Certificate {
    bool yes = false;
    WitnessMap map;
    int cost = 0;
    bool reduced_form = false;
};

void write_certificate(std::ostream& out, const Certificate& c,
                       const std::vector<std::string>& comments = {});
Certificate parse_certificate(std::istream& in);

}  // namespace gridct
