#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "primcoal/common.hpp"

namespace primcoal {

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    double w = 0.0;
};

/// Simple undirected graph on vertices 0..n-1 whose edge weights are distinct
/// and lie in (0,1]. Immutable after construction.
class WeightedGraph {
public:
    struct Neighbour {
        Vertex vertex;
        double weight;
    };

    WeightedGraph() = default;

    /// Throws InvalidArgument on self-loops, parallel edges, out-of-range ids,
    /// weights outside (0,1] or repeated weights.
    WeightedGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const Neighbour> neighbours(Vertex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    bool connected() const { return connected_; }

    /// Edge indices sorted by increasing weight.
    std::vector<std::size_t> edges_by_weight() const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbour> adjacency_;
    bool connected_ = true;
};

/// K_n with i.i.d. uniform weights. Refuses n > 4096; larger dense graphs are
/// out of reach and the sparse samplers in multiplicative.hpp cover that range.
WeightedGraph complete_graph(std::size_t n, Rng& rng);

/// Uniform labelled tree decoded from a uniform Pruefer sequence.
std::vector<Edge> pruefer_tree_edges(std::size_t n, Rng& rng);
std::vector<Edge> pruefer_decode(std::size_t n, std::span<const Vertex> sequence);

/// Uniform labelled tree from an Aldous-Broder random walk on K_n.
std::vector<Edge> aldous_broder_tree_edges(std::size_t n, Rng& rng);

/// Attach i.i.d. uniform weights to a list of unweighted edges.
WeightedGraph with_uniform_weights(std::size_t n, std::vector<Edge> edges, Rng& rng);

// Text format: header "n m", then one "u v w" line per edge. Weights are
// written in shortest round-trip form so serialisation is deterministic.
void write_graph(std::ostream& os, const WeightedGraph& g);
WeightedGraph read_graph(std::istream& is);
void write_graph_file(const std::string& path, const WeightedGraph& g);
WeightedGraph read_graph_file(const std::string& path);

} // namespace primcoal
