#include "primcoal/filtration.hpp"

#include <algorithm>
#include <numeric>

namespace primcoal {

FiltrationBuilder::FiltrationBuilder(std::size_t n) : parent_(n), root_block_(n), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) root_block_[i] = {i, i, 1, 0};
}

std::size_t FiltrationBuilder::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

Block FiltrationBuilder::block_of(std::size_t x) { return root_block_[find(x)]; }

std::optional<MergeEvent> FiltrationBuilder::add_edge(std::size_t a, std::size_t b, double time) {
    std::size_t ra = find(a), rb = find(b);
    if (ra == rb) {
        ++root_block_[ra].edges;
        return std::nullopt;
    }
    Block ba = root_block_[ra], bb = root_block_[rb];
    MergeEvent ev{time, ba, bb};
    if (bb.first < ba.first) std::swap(ev.left, ev.right);

    if (ba.size < bb.size) std::swap(ra, rb);
    parent_[rb] = ra;
    Block& merged = root_block_[ra];
    merged.first = std::min(ba.first, bb.first);
    merged.last = std::max(ba.last, bb.last);
    merged.size = ba.size + bb.size;
    merged.edges = ba.edges + bb.edges + 1;
    --components_;
    return ev;
}

std::vector<Block> FiltrationBuilder::blocks() {
    std::vector<Block> out;
    out.reserve(components_);
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] == i) out.push_back(root_block_[i]);
    std::sort(out.begin(), out.end(), [](const Block& x, const Block& y) { return x.first < y.first; });
    return out;
}

ComponentFiltration::ComponentFiltration(const WeightedGraph& g, const PrimOrdering& ord)
    : n_(g.vertex_count()) {
    require(ord.size() == n_, "component_filtration: ordering does not match graph");
    sorted_.reserve(g.edge_count());
    for (const Edge& e : g.edges()) sorted_.push_back({ord.rank[e.u], ord.rank[e.v], e.w});
    std::sort(sorted_.begin(), sorted_.end(), [](const RankedEdge& x, const RankedEdge& y) { return x.w < y.w; });
    FiltrationBuilder builder(n_);
    for (const auto& e : sorted_)
        if (auto ev = builder.add_edge(e.a, e.b, e.w)) events_.push_back(*ev);
}

std::vector<Block> ComponentFiltration::blocks_at(double t) const {
    FiltrationBuilder builder(n_);
    for (const auto& e : sorted_) {
        if (e.w > t) break;
        builder.add_edge(e.a, e.b, e.w);
    }
    return builder.blocks();
}

} // namespace primcoal
