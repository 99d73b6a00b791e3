#include "primcoal/prim.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace primcoal {

PrimOrdering prim_order(const WeightedGraph& g, Vertex root) {
    const std::size_t n = g.vertex_count();
    require(root < n, "prim_order: root out of range");
    if (!g.connected()) throw InvalidArgument("prim_order: graph is disconnected");

    PrimOrdering ord;
    ord.order.reserve(n);
    ord.rank.assign(n, std::numeric_limits<std::size_t>::max());
    ord.attach_weight.assign(n, 0.0);
    ord.attach_parent.assign(n, root);

    struct Cut {
        double w;
        Vertex from;
        Vertex to;
        bool operator>(const Cut& o) const { return w > o.w; }
    };
    std::priority_queue<Cut, std::vector<Cut>, std::greater<>> heap;

    auto absorb = [&](Vertex v, double w, Vertex parent) {
        ord.rank[v] = ord.order.size();
        ord.attach_weight[ord.order.size()] = w;
        ord.attach_parent[ord.order.size()] = parent;
        ord.order.push_back(v);
        for (const auto& nb : g.neighbours(v))
            if (ord.rank[nb.vertex] == std::numeric_limits<std::size_t>::max())
                heap.push({nb.weight, v, nb.vertex});
    };

    absorb(root, 0.0, root);
    while (ord.order.size() < n) {
        Cut c = heap.top();
        heap.pop();
        if (ord.rank[c.to] != std::numeric_limits<std::size_t>::max()) continue; // stale
        absorb(c.to, c.w, c.from);
    }
    return ord;
}

LevelPartition level_components(const WeightedGraph& g, double t) {
    const std::size_t n = g.vertex_count();
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    LevelPartition p;
    p.component_of.assign(n, unset);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (p.component_of[s] != unset) continue;
        const std::size_t id = p.components.size();
        p.components.emplace_back();
        p.component_of[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            p.components[id].push_back(v);
            for (const auto& nb : g.neighbours(v)) {
                if (nb.weight <= t && p.component_of[nb.vertex] == unset) {
                    p.component_of[nb.vertex] = id;
                    stack.push_back(nb.vertex);
                }
            }
        }
        std::sort(p.components[id].begin(), p.components[id].end());
    }
    return p;
}

std::optional<std::vector<RankInterval>> as_prim_intervals(const LevelPartition& p,
                                                           const PrimOrdering& ord) {
    std::vector<RankInterval> out;
    out.reserve(p.count());
    for (const auto& comp : p.components) {
        std::size_t lo = std::numeric_limits<std::size_t>::max(), hi = 0;
        for (Vertex v : comp) {
            lo = std::min(lo, ord.rank[v]);
            hi = std::max(hi, ord.rank[v]);
        }
        if (hi - lo + 1 != comp.size()) return std::nullopt;
        out.push_back({lo, hi});
    }
    std::sort(out.begin(), out.end(),
              [](const RankInterval& a, const RankInterval& b) { return a.first < b.first; });
    return out;
}

bool refines(const LevelPartition& fine, const LevelPartition& coarse) {
    if (fine.component_of.size() != coarse.component_of.size()) return false;
    for (const auto& comp : fine.components)
        for (Vertex v : comp)
            if (coarse.component_of[v] != coarse.component_of[comp.front()]) return false;
    return true;
}

} // namespace primcoal
