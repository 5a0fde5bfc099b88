#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridct/graph.hpp"

namespace gridct {

// CNF-shaped formula; literals are signed 1-based variable indices.
struct NaeFormula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
};
using CnfFormula = NaeFormula;

struct Hypergraph {
    int vertex_count = 0;
    std::vector<VertexSet> edges;
};

// Adds one fresh shared variable as a positive literal to every clause.
// Satisfiability of the input equals NAE-satisfiability of the output.
NaeFormula sat3_to_nae(const CnfFormula& f);

// Two vertices per variable, one edge per variable pair and one per clause.
Hypergraph nae_to_hypergraph(const NaeFormula& f);

struct C4Instance {
    Graph graph;
    int k = 0;
    bool universal_edge_added = false;
};

// Vertex clique + complete bipartite edge gadgets + two apex vertices;
// k = |V| - 4. Ensures the hypergraph has >= 2 edges, one universal.
C4Instance hypergraph_to_c4_instance(const Hypergraph& h);

struct SplitGridInstance {
    Graph graph;
    int k = 0;
    WitnessMap planted;
};

// Planted YES instance: the r x q grid with k random vertex splits.
SplitGridInstance split_grid(int r, int q, int k, std::uint64_t seed);

// Uniform random simple graph with exactly m edges; optionally rejection
// sampled until connected. Deterministic per seed.
Graph random_graph(int n, long long m, std::uint64_t seed, bool connected = false);

// DIMACS-CNF: `p cnf <vars> <clauses>`, clause lines of signed ints ending 0.
NaeFormula parse_cnf(std::istream& in);
void write_cnf(std::ostream& out, const NaeFormula& f);

// Hypergraph format: `p hyp <n> <m>`, lines `h <size> <v1> ... <vsize>`.
Hypergraph parse_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

}  // namespace gridct
