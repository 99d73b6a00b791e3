#include "primcoal/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "primcoal/format.hpp"

namespace primcoal {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    require(n_ >= 1, "graph needs at least one vertex");
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<double> weights;
    pairs.reserve(edges_.size());
    weights.reserve(edges_.size());
    for (const Edge& e : edges_) {
        require(e.u < n_ && e.v < n_, "edge endpoint out of range");
        require(e.u != e.v, "self-loop");
        require(e.w > 0.0 && e.w <= 1.0, "edge weight must lie in (0,1]");
        pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
        weights.push_back(e.w);
    }
    std::sort(pairs.begin(), pairs.end());
    require(std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end(), "parallel edge");
    std::sort(weights.begin(), weights.end());
    require(std::adjacent_find(weights.begin(), weights.end()) == weights.end(),
            "duplicate edge weight: graph is not properly weighted");

    std::vector<std::size_t> degree(n_, 0);
    for (const Edge& e : edges_) {
        ++degree[e.u];
        ++degree[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    adjacency_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adjacency_[fill[e.u]++] = {e.v, e.w};
        adjacency_[fill[e.v]++] = {e.u, e.w};
    }

    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (const auto& nb : neighbours(v)) {
            if (!seen[nb.vertex]) {
                seen[nb.vertex] = 1;
                ++reached;
                stack.push_back(nb.vertex);
            }
        }
    }
    connected_ = reached == n_;
}

std::vector<std::size_t> WeightedGraph::edges_by_weight() const {
    std::vector<std::size_t> idx(edges_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return edges_[a].w < edges_[b].w; });
    return idx;
}

WeightedGraph complete_graph(std::size_t n, Rng& rng) {
    require(n >= 1, "complete_graph: n must be positive");
    require(n <= 4096, "complete_graph: dense K_n is limited to n <= 4096");
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, uniform_open(rng)});
    return WeightedGraph(n, std::move(edges));
}

std::vector<Edge> pruefer_decode(std::size_t n, std::span<const Vertex> sequence) {
    require(n >= 1, "pruefer_decode: n must be positive");
    if (n == 1) return {};
    require(sequence.size() == n - 2, "pruefer_decode: sequence must have n-2 entries");
    std::vector<std::size_t> degree(n, 1);
    for (Vertex s : sequence) {
        require(s < n, "pruefer_decode: label out of range");
        ++degree[s];
    }
    // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` may jump back.
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    std::size_t ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    std::size_t leaf = ptr;
    for (Vertex s : sequence) {
        edges.push_back({static_cast<Vertex>(leaf), s, 0.0});
        degree[leaf] = 0;
        if (--degree[s] == 1 && s < ptr) {
            leaf = s;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    for (std::size_t v = n; v-- > 0;) {
        if (degree[v] == 1 && v != leaf) {
            edges.push_back({static_cast<Vertex>(leaf), static_cast<Vertex>(v), 0.0});
            break;
        }
    }
    return edges;
}

std::vector<Edge> pruefer_tree_edges(std::size_t n, Rng& rng) {
    require(n >= 1, "pruefer_tree_edges: n must be positive");
    if (n == 1) return {};
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    std::vector<Vertex> seq(n - 2);
    for (auto& s : seq) s = pick(rng);
    return pruefer_decode(n, seq);
}

std::vector<Edge> aldous_broder_tree_edges(std::size_t n, Rng& rng) {
    require(n >= 1, "aldous_broder_tree_edges: n must be positive");
    std::vector<Edge> edges;
    if (n == 1) return edges;
    std::vector<char> visited(n, 0);
    std::uniform_int_distribution<Vertex> start(0, static_cast<Vertex>(n - 1));
    std::uniform_int_distribution<Vertex> step(0, static_cast<Vertex>(n - 2));
    Vertex cur = start(rng);
    visited[cur] = 1;
    std::size_t count = 1;
    while (count < n) {
        Vertex next = step(rng);
        if (next >= cur) ++next; // uniform neighbour of cur in K_n
        if (!visited[next]) {
            visited[next] = 1;
            ++count;
            edges.push_back({cur, next, 0.0});
        }
        cur = next;
    }
    return edges;
}

WeightedGraph with_uniform_weights(std::size_t n, std::vector<Edge> edges, Rng& rng) {
    for (Edge& e : edges) e.w = uniform_open(rng);
    return WeightedGraph(n, std::move(edges));
}

void write_graph(std::ostream& os, const WeightedGraph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

WeightedGraph read_graph(std::istream& is) {
    std::size_t n = 0, m = 0;
    if (!(is >> n >> m)) throw InvalidArgument("read_graph: missing 'n m' header");
    std::vector<Edge> edges(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::string ws;
        if (!(is >> edges[i].u >> edges[i].v >> ws))
            throw InvalidArgument("read_graph: truncated edge list at line " + std::to_string(i + 2));
        edges[i].w = std::stod(ws);
    }
    return WeightedGraph(n, std::move(edges));
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_graph(os, g);
}

WeightedGraph read_graph_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path);
    return read_graph(is);
}

} // namespace primcoal
