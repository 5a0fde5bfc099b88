#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gridct/graph.hpp"

namespace gridct {

// Induced p x t grid whose removal leaves exactly two components of size
// >= k + 1, attached to the first and last row only.
struct GridSeparator {
    int p = 0, t = 0;
    std::vector<std::vector<int>> cells;  // cells[i][j], 0-based i < p, j < t
};

enum class Rr2Outcome { pass, no_instance };

// NO if some degree exceeds k + 5 or more than 6k vertices have degree >= 6.
Rr2Outcome apply_rr2(const Graph& g, int k);

// Widest (p x t)-grid-separator with t >= t_min, assembled from 2-row strips
// along unique shortest anchor paths; ties broken by smallest anchors.
std::optional<GridSeparator> find_grid_separator(const Graph& g, int k, int p, int t_min);
std::optional<GridSeparator> find_grid_separator_serial(const Graph& g, int k, int p, int t_min);

// Contracts the vertical edges between the two middle rows of the separator.
std::pair<Graph, std::vector<int>> apply_rr3(const Graph& g, int k, const GridSeparator& sep);

struct KernelReport {
    enum class Outcome { no_instance, kernel };
    Outcome outcome = Outcome::no_instance;
    std::optional<Graph> kernel_graph;
    int k = 0;
    int rr3_applications = 0;
    long long k_o = 0;
    long long vertex_bound = 0;  // k_o^2 + k + 1
};

KernelReport kernelize(const Graph& g, int k);

long long kernel_threshold_k_o(int k);
long long kernel_vertex_bound(int k);

}  // namespace gridct
