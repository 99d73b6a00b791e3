#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "primcoal/graph.hpp"

namespace primcoal {

/// Closed range of Prim ranks [first, last] (0-based ranks).
struct RankInterval {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t size() const { return last - first + 1; }
    friend bool operator==(const RankInterval&, const RankInterval&) = default;
};

/// Vertex order produced by Prim's algorithm (invasion percolation) from a root.
/// order[i] is the vertex of rank i; attach_weight[i] / attach_parent[i] describe
/// the edge that added order[i] (unused for i = 0).
struct PrimOrdering {
    std::vector<Vertex> order;
    std::vector<std::size_t> rank;
    std::vector<double> attach_weight;
    std::vector<Vertex> attach_parent;

    std::size_t size() const { return order.size(); }
};

/// Unique Prim order of a connected properly weighted graph. Lazy-deletion
/// heap over cut edges, O(m log m). Throws InvalidArgument if g is
/// disconnected or root is out of range.
PrimOrdering prim_order(const WeightedGraph& g, Vertex root = 0);

/// Connected components of G_t = (V, {e : w_e <= t}).
struct LevelPartition {
    std::vector<std::size_t> component_of; // component index per vertex
    std::vector<std::vector<Vertex>> components; // sorted by smallest vertex

    std::size_t count() const { return components.size(); }
};

LevelPartition level_components(const WeightedGraph& g, double t);

/// Components of a partition as Prim intervals, ordered by first rank.
/// Returns std::nullopt if some component is not a set of consecutive ranks.
std::optional<std::vector<RankInterval>> as_prim_intervals(const LevelPartition& p,
                                                           const PrimOrdering& ord);

/// True iff every block of `fine` is contained in a block of `coarse`.
bool refines(const LevelPartition& fine, const LevelPartition& coarse);

} // namespace primcoal
