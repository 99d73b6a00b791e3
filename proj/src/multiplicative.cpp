#include "primcoal/multiplicative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace primcoal {

double p_lambda(std::size_t n, double lambda) {
    require(n >= 1, "p_lambda: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double p = 1.0 / nd + lambda / std::pow(nd, 4.0 / 3.0);
    require(p >= 0.0 && p <= 1.0, "p_lambda: 1/n + lambda n^{-4/3} lies outside [0,1]");
    return p;
}

double homogeneous_time(double p) {
    require(p >= 0.0 && p < 1.0, "homogeneous_time: p must lie in [0,1)");
    return -std::log1p(-p);
}

UniformField::UniformField(std::size_t n, Rng& rng) : n_(n) {
    require(n >= 1, "UniformField: n must be >= 1");
    require(n <= max_full_n, "UniformField: full field limited to n <= 4096; use z_walk_sparse");
    data_.resize(n * (n - 1) / 2);
    for (double& u : data_) u = uniform_open(rng);
}

UniformField::UniformField(std::size_t n, std::vector<double> entries) : n_(n), data_(std::move(entries)) {
    require(n >= 1, "UniformField: n must be >= 1");
    require(data_.size() == n * (n - 1) / 2, "UniformField: inconsistent field size");
}

bool z_reflects_y(const LatticePath& z, const LatticePath& y) {
    if (z.size() != y.size() || z.size() == 0 || z[0] != 0 || y[0] != 0) return false;
    std::int64_t min_before = y[0];
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (z[i] != y[i] - min_before + 1) return false;
        min_before = std::min(min_before, y[i]);
    }
    return true;
}

ZWalk z_walk(double t, const UniformField& field) {
    require(t >= 0.0 && t <= 1.0, "z_walk: t must lie in [0,1]");
    const std::size_t n = field.n();
    ZWalk w;
    w.t = t;
    w.z.values.assign(n + 1, 0);
    w.y.values.assign(n + 1, 0);
    w.increments.assign(n, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::int64_t prev = w.z[i - 1];
        const std::size_t skip = static_cast<std::size_t>(std::max<std::int64_t>(prev - 1, 0));
        std::uint32_t x = 0;
        const auto row = field.row(i);
        for (std::size_t c = skip; c < row.size(); ++c) // columns k = i+1+c
            if (row[c] <= t) ++x;
        w.increments[i - 1] = x;
        w.z.values[i] = prev + x - (prev > 0 ? 1 : 0);
        w.y.values[i] = w.y[i - 1] + static_cast<std::int64_t>(x) - 1;
    }
    if (!z_reflects_y(w.z, w.y)) throw Error("z_walk: Z is not the reflection of Y");
    return w;
}

ZWalk z_walk(const CriticalWindowParams& params, const UniformField& field) {
    require(params.n == field.n(), "z_walk: field size does not match n");
    return z_walk(params.p(), field);
}

std::vector<WalkComponent> walk_components(const LatticePath& z) {
    std::vector<WalkComponent> out;
    std::size_t last_zero = 0;
    for (std::size_t k = 1; k < z.size(); ++k) {
        if (z[k] == 0) {
            out.push_back({last_zero + 1, k, 0});
            last_zero = k;
        }
    }
    return out;
}

std::vector<WalkComponent> surplus_field(const ZWalk& walk, const UniformField& field) {
    require(walk.z.size() == field.n() + 1, "surplus_field: walk and field sizes differ");
    auto comps = walk_components(walk.z);
    for (auto& c : comps) {
        for (std::size_t i = c.first - 1; i + 1 <= c.last; ++i) {
            const std::int64_t height = walk.z[i];
            for (std::int64_t j = 1; j < height; ++j)
                if (field.planar(i, static_cast<std::size_t>(j)) <= walk.t) ++c.surplus;
        }
    }
    return comps;
}

SparseWalk z_walk_sparse(std::size_t n, double t, Rng& rng) {
    require(n >= 1, "z_walk_sparse: n must be >= 1");
    require(t >= 0.0 && t <= 1.0, "z_walk_sparse: t must lie in [0,1]");
    SparseWalk res;
    ZWalk& w = res.walk;
    w.t = t;
    w.z.values.assign(n + 1, 0);
    w.y.values.assign(n + 1, 0);
    w.increments.assign(n, 0);
    std::uint64_t surplus = 0;
    std::size_t start = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::int64_t prev = w.z[i - 1];
        const auto skip = static_cast<long long>(std::max<std::int64_t>(prev - 1, 0));
        const long long avail = static_cast<long long>(n - i) - skip;
        std::binomial_distribution<long long> fresh(avail, t);
        const auto x = static_cast<std::uint32_t>(fresh(rng));
        if (skip > 0) {
            std::binomial_distribution<long long> back(skip, t);
            surplus += static_cast<std::uint64_t>(back(rng));
        }
        w.increments[i - 1] = x;
        w.z.values[i] = prev + x - (prev > 0 ? 1 : 0);
        w.y.values[i] = w.y[i - 1] + static_cast<std::int64_t>(x) - 1;
        if (w.z[i] == 0) {
            res.components.push_back({start, i, surplus});
            surplus = 0;
            start = i + 1;
        }
    }
    if (!z_reflects_y(w.z, w.y)) throw Error("z_walk_sparse: Z is not the reflection of Y");
    return res;
}

UniformField reorder_field_from_graph(const WeightedGraph& complete, const PrimOrdering& ord) {
    const std::size_t n = complete.vertex_count();
    require(complete.edge_count() == n * (n - 1) / 2, "reorder_field_from_graph: graph is not complete");
    require(n <= UniformField::max_full_n, "reorder_field_from_graph: n too large for a full field");
    require(ord.size() == n, "reorder_field_from_graph: ordering does not match graph");

    // weight by (0-based) rank pair
    std::vector<double> w(n * n, 0.0);
    for (const Edge& e : complete.edges()) {
        const std::size_t a = ord.rank[e.u], b = ord.rank[e.v];
        w[a * n + b] = w[b * n + a] = e.w;
    }
    std::vector<double> entry(n, std::numeric_limits<double>::infinity());
    std::vector<double> data;
    data.reserve(n * (n - 1) / 2);
    std::vector<std::size_t> later;
    for (std::size_t i = 0; i + 1 < n; ++i) { // 0-based rank of u_{i+1}
        later.resize(n - i - 1);
        std::iota(later.begin(), later.end(), i + 1);
        std::stable_sort(later.begin(), later.end(),
                         [&](std::size_t a, std::size_t b) { return entry[a] < entry[b]; });
        for (std::size_t k : later) data.push_back(w[i * n + k]);
        for (std::size_t k = i + 1; k < n; ++k) entry[k] = std::min(entry[k], w[i * n + k]);
    }
    return UniformField(n, std::move(data));
}

MassVector gamma_times(std::size_t n, std::span<const std::size_t> sizes) {
    const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
    std::vector<double> v;
    v.reserve(sizes.size());
    for (std::size_t s : sizes) v.push_back(static_cast<double>(s) / scale);
    return MassVector(std::move(v));
}

MassVector gamma_times(std::size_t n, const std::vector<WalkComponent>& components) {
    std::vector<std::size_t> sizes;
    sizes.reserve(components.size());
    for (const auto& c : components) sizes.push_back(c.size());
    return gamma_times(n, sizes);
}

LatticePath y_times(const ZWalk& walk) {
    const double n = static_cast<double>(walk.y.size() - 1);
    LatticePath y = walk.y;
    y.scale = {std::pow(n, -2.0 / 3.0), std::pow(n, -1.0 / 3.0)};
    return y;
}

namespace {

std::vector<Edge> sample_sparse_edges(std::size_t n, double p_max, Rng& rng) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::vector<Edge> edges;
    if (pairs == 0 || p_max <= 0.0) return edges;
    std::binomial_distribution<long long> count_dist(static_cast<long long>(pairs), p_max);
    const auto count = static_cast<std::uint64_t>(count_dist(rng));
    edges.reserve(count);
    if (count * 2 > pairs) {
        // dense regime: partial Fisher-Yates over all pairs
        std::vector<std::pair<Vertex, Vertex>> all;
        all.reserve(pairs);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uniform_int_distribution<std::uint64_t> pick(i, pairs - 1);
            std::swap(all[i], all[pick(rng)]);
            edges.push_back({all[i].first, all[i].second, 0.0});
        }
    } else {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(count * 2);
        std::uniform_int_distribution<Vertex> vert(0, static_cast<Vertex>(n - 1));
        while (edges.size() < count) {
            Vertex u = vert(rng), v = vert(rng);
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            if (!seen.insert(static_cast<std::uint64_t>(u) * n + v).second) continue;
            edges.push_back({u, v, 0.0});
        }
    }
    for (Edge& e : edges) e.w = p_max * uniform_open(rng);
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });
    return edges;
}

} // namespace

GraphRoute graph_route_p(std::size_t n, std::span<const double> ps, Rng& rng, bool keep_labels) {
    require(n >= 1, "graph_route: n must be >= 1");
    require(!ps.empty(), "graph_route: empty grid");
    for (double p : ps) require(p >= 0.0 && p <= 1.0, "graph_route: p must lie in [0,1]");
    GraphRoute route;
    route.n = n;
    route.p_max = *std::max_element(ps.begin(), ps.end());
    const auto edges = sample_sparse_edges(n, route.p_max, rng);
    route.edges_sampled = edges.size();

    std::vector<std::size_t> grid(ps.size());
    std::iota(grid.begin(), grid.end(), std::size_t{0});
    std::stable_sort(grid.begin(), grid.end(), [&](std::size_t a, std::size_t b) { return ps[a] < ps[b]; });

    route.snapshots.resize(ps.size());
    FiltrationBuilder builder(n);
    std::size_t next = 0;
    for (std::size_t g : grid) {
        while (next < edges.size() && edges[next].w <= ps[g]) {
            builder.add_edge(edges[next].u, edges[next].v, edges[next].w);
            ++next;
        }
        GraphSnapshot& snap = route.snapshots[g];
        snap.lambda = std::numeric_limits<double>::quiet_NaN();
        snap.p = ps[g];
        snap.components = builder.blocks();
        if (keep_labels) {
            snap.labels.resize(n);
            for (std::size_t v = 0; v < n; ++v) snap.labels[v] = static_cast<std::uint32_t>(builder.find(v));
        }
    }
    return route;
}

GraphRoute graph_route(std::size_t n, std::span<const double> lambdas, Rng& rng, bool keep_labels) {
    std::vector<double> ps;
    ps.reserve(lambdas.size());
    for (double l : lambdas) ps.push_back(p_lambda(n, l));
    GraphRoute route = graph_route_p(n, ps, rng, keep_labels);
    for (std::size_t i = 0; i < lambdas.size(); ++i) route.snapshots[i].lambda = lambdas[i];
    return route;
}

AugmentedState AugmentedState::from_pairs(std::vector<std::pair<double, std::uint64_t>> pairs) {
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<double> masses;
    AugmentedState st;
    for (const auto& [x, s] : pairs) {
        require(x > 0.0 || s == 0, "AugmentedState: surplus must vanish where the mass is zero");
        masses.push_back(x);
        st.surpluses.push_back(s);
    }
    st.masses = MassVector(std::move(masses));
    return st;
}

AugmentedState augmented_state(std::size_t n, const std::vector<WalkComponent>& components) {
    const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
    std::vector<std::pair<double, std::uint64_t>> pairs;
    pairs.reserve(components.size());
    for (const auto& c : components) pairs.emplace_back(static_cast<double>(c.size()) / scale, c.surplus);
    return AugmentedState::from_pairs(std::move(pairs));
}

AugmentedState augmented_state(std::size_t n, const std::vector<Block>& components) {
    const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
    std::vector<std::pair<double, std::uint64_t>> pairs;
    pairs.reserve(components.size());
    for (const auto& c : components) pairs.emplace_back(static_cast<double>(c.size) / scale, c.excess());
    return AugmentedState::from_pairs(std::move(pairs));
}

double d_U(const AugmentedState& a, const AugmentedState& b) {
    const std::size_t len = std::max({a.masses.size(), b.masses.size(), a.surpluses.size(), b.surpluses.size()});
    double sq = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double dx = a.masses[i] - b.masses[i];
        sq += dx * dx;
        weighted += std::abs(a.masses[i] * static_cast<double>(a.surplus(i)) -
                             b.masses[i] * static_cast<double>(b.surplus(i)));
    }
    return std::sqrt(sq) + weighted;
}

} // namespace primcoal
