#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "primcoal/prim.hpp"

namespace primcoal {

/// A component of the current filtration state. `first`/`last` are the
/// smallest and largest element labels; with Prim ranks as labels they are the
/// endpoints of a Prim interval.
struct Block {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t size = 0;
    std::uint64_t edges = 0;

    /// Edges minus (size - 1); 0 iff the component is a tree.
    std::uint64_t excess() const { return edges + 1 - size; }
    bool is_interval() const { return last - first + 1 == size; }
};

struct MergeEvent {
    double time = 0.0;
    Block left;  // block with the smaller first label
    Block right;

    bool adjacent() const { return left.is_interval() && right.is_interval() && left.last + 1 == right.first; }
};

/// Union-find over element labels 0..n-1 that also counts edges per component.
/// Single writer; edges must be fed in non-decreasing time order.
class FiltrationBuilder {
public:
    explicit FiltrationBuilder(std::size_t n);

    /// Adds an edge at `time`. Returns the merge it caused, if any.
    std::optional<MergeEvent> add_edge(std::size_t a, std::size_t b, double time);

    std::size_t element_count() const { return parent_.size(); }
    std::size_t component_count() const { return components_; }
    std::size_t find(std::size_t x);
    Block block_of(std::size_t x);

    /// Current components ordered by first label.
    std::vector<Block> blocks();

private:
    std::vector<std::size_t> parent_;
    std::vector<Block> root_block_;
    std::size_t components_;
};

/// Full merge history of G_t, t in [0,1], with union-find indexed by Prim rank.
class ComponentFiltration {
public:
    ComponentFiltration(const WeightedGraph& g, const PrimOrdering& ord);

    /// The n - #CC merges in chronological order.
    const std::vector<MergeEvent>& events() const { return events_; }

    /// Components of G_t as Prim-rank blocks with edge counts.
    std::vector<Block> blocks_at(double t) const;

private:
    struct RankedEdge {
        std::size_t a, b;
        double w;
    };
    std::size_t n_;
    std::vector<RankedEdge> sorted_;
    std::vector<MergeEvent> events_;
};

} // namespace primcoal
