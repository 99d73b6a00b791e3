#pragma once

#include <cstddef>
#include <vector>

#include "primcoal/lattice_path.hpp"
#include "primcoal/prim.hpp"

namespace primcoal {

/// Total order on vertices used to break choices during exploration.
/// key[v] is the position of v; smaller keys are visited first.
struct ExplorationOrder {
    std::vector<std::size_t> key;

    static ExplorationOrder labels(std::size_t n);
    static ExplorationOrder prim(const PrimOrdering& ord);
};

/// Result of exploring G_t. z.values[k] = #Neigh(S_k) for 0 <= k <= n + 1 with
/// z(0) = z(n+1) = 0; visit_order[k-1] is the k-th visited vertex.
struct Exploration {
    LatticePath z;
    std::vector<Vertex> visit_order;
};

/// Visits the smallest-key neighbour of the visited set, or the smallest-key
/// unvisited vertex when the neighbourhood is empty.
Exploration explore(const WeightedGraph& g, double t, const ExplorationOrder& order);

/// Component sizes read off an exploration path: gaps between successive
/// zeros of z over k in {0..n} (zeros counted for k in {1..n}).
std::vector<std::size_t> component_sizes_from_zeros(const LatticePath& z);

} // namespace primcoal
