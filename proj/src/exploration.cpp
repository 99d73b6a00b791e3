#include "primcoal/exploration.hpp"

#include <functional>
#include <numeric>
#include <queue>

namespace primcoal {

ExplorationOrder ExplorationOrder::labels(std::size_t n) {
    ExplorationOrder o;
    o.key.resize(n);
    std::iota(o.key.begin(), o.key.end(), std::size_t{0});
    return o;
}

ExplorationOrder ExplorationOrder::prim(const PrimOrdering& ord) { return {ord.rank}; }

Exploration explore(const WeightedGraph& g, double t, const ExplorationOrder& order) {
    const std::size_t n = g.vertex_count();
    require(order.key.size() == n, "explore: order size does not match graph");
    std::vector<Vertex> by_key(n, 0);
    std::vector<char> key_seen(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        require(order.key[v] < n && !key_seen[order.key[v]], "explore: order keys must be a permutation");
        key_seen[order.key[v]] = 1;
        by_key[order.key[v]] = v;
    }

    Exploration ex;
    ex.z.values.assign(n + 2, 0);
    ex.visit_order.reserve(n);
    std::vector<char> visited(n, 0), in_neigh(n, 0);
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> frontier; // keys
    std::size_t neigh = 0;
    std::size_t next_fresh = 0;

    for (std::size_t k = 1; k <= n; ++k) {
        Vertex v;
        if (!frontier.empty()) {
            v = by_key[frontier.top()];
            frontier.pop();
            in_neigh[v] = 0;
            --neigh;
        } else {
            while (visited[by_key[next_fresh]]) ++next_fresh;
            v = by_key[next_fresh];
        }
        visited[v] = 1;
        ex.visit_order.push_back(v);
        for (const auto& nb : g.neighbours(v)) {
            if (nb.weight <= t && !visited[nb.vertex] && !in_neigh[nb.vertex]) {
                in_neigh[nb.vertex] = 1;
                ++neigh;
                frontier.push(order.key[nb.vertex]);
            }
        }
        ex.z.values[k] = static_cast<std::int64_t>(neigh);
    }
    return ex;
}

std::vector<std::size_t> component_sizes_from_zeros(const LatticePath& z) {
    require(z.size() >= 2, "component_sizes_from_zeros: path too short");
    const std::size_t n = z.size() - 2;
    std::vector<std::size_t> sizes;
    std::size_t last_zero = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (z[k] == 0) {
            sizes.push_back(k - last_zero);
            last_zero = k;
        }
    }
    return sizes;
}

} // namespace primcoal
