#include "primcoal/additive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "primcoal/excursions.hpp"

namespace primcoal {

LatticePath ConditionedWalk::path() const {
    LatticePath y;
    y.values.resize(increments.size() + 1, 0);
    for (std::size_t i = 0; i < increments.size(); ++i)
        y.values[i + 1] = y.values[i] + static_cast<std::int64_t>(increments[i]) - 1;
    return y;
}

bool is_first_passage(std::span<const std::uint32_t> increments) {
    std::int64_t y = 0;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        y += static_cast<std::int64_t>(increments[i]) - 1;
        if (i + 1 < increments.size() && y < 0) return false;
    }
    return !increments.empty() && y == -1;
}

std::vector<std::uint32_t> cycle_lemma_rotation(std::span<const std::uint32_t> increments) {
    const std::size_t n = increments.size();
    require(n >= 1, "cycle_lemma_rotation: empty sequence");
    std::int64_t y = 0, best = 1;
    std::size_t argmin = 0; // 1-based index of the first minimum of the partial sums
    for (std::size_t i = 0; i < n; ++i) {
        y += static_cast<std::int64_t>(increments[i]) - 1;
        if (y < best) {
            best = y;
            argmin = i + 1;
        }
    }
    require(y == -1, "cycle_lemma_rotation: increments must sum to n - 1");
    std::vector<std::uint32_t> out(n);
    for (std::size_t m = 0; m < n; ++m) out[m] = increments[(argmin + m) % n];
    return out;
}

ConditionedWalk sample_conditioned_walk(std::size_t n, Rng& rng) {
    require(n >= 1, "sample_conditioned_walk: n must be >= 1");
    std::vector<std::uint32_t> counts(n, 0);
    std::uniform_int_distribution<std::size_t> cell(0, n - 1);
    for (std::size_t b = 0; b + 1 < n; ++b) ++counts[cell(rng)];
    return {cycle_lemma_rotation(counts)};
}

ThinnedWalkFamily::ThinnedWalkFamily(ConditionedWalk base, Rng& rng) : base_(std::move(base)) {
    offsets_.assign(base_.size() + 1, 0);
    for (std::size_t i = 0; i < base_.size(); ++i) offsets_[i + 1] = offsets_[i] + base_.increments[i];
    uniforms_.resize(offsets_.back());
    for (double& u : uniforms_) u = uniform_open(rng);
}

ThinnedWalkFamily::ThinnedWalkFamily(ConditionedWalk base, std::vector<double> uniforms)
    : base_(std::move(base)), uniforms_(std::move(uniforms)) {
    offsets_.assign(base_.size() + 1, 0);
    for (std::size_t i = 0; i < base_.size(); ++i) offsets_[i + 1] = offsets_[i] + base_.increments[i];
    require(uniforms_.size() == offsets_.back(), "ThinnedWalkFamily: one uniform per unit of increment required");
}

std::vector<std::uint32_t> ThinnedWalkFamily::increments_at(double t) const {
    require(t >= 0.0 && t <= 1.0, "thin: t must lie in [0,1]");
    std::vector<std::uint32_t> out(base_.size(), 0);
    for (std::size_t i = 0; i < base_.size(); ++i)
        for (double u : unit_uniforms(i))
            if (u <= t) ++out[i];
    return out;
}

LatticePath ThinnedWalkFamily::walk_at(double t) const {
    return ConditionedWalk{increments_at(t)}.path();
}

LatticePath thin(const ConditionedWalk& walk, double t, Rng& rng) {
    require(t >= 0.0 && t <= 1.0, "thin: t must lie in [0,1]");
    std::vector<std::uint32_t> kept(walk.size(), 0);
    std::bernoulli_distribution keep(t);
    for (std::size_t i = 0; i < walk.size(); ++i)
        for (std::uint32_t l = 0; l < walk.increments[i]; ++l)
            if (keep(rng)) ++kept[i];
    return ConditionedWalk{std::move(kept)}.path();
}

LatticePath thin(const ThinnedWalkFamily& family, double t) { return family.walk_at(t); }

double additive_level(std::size_t n, double lambda) {
    require(n >= 1, "additive_level: n must be >= 1");
    const double root = std::sqrt(static_cast<double>(n));
    require(lambda >= 0.0 && lambda <= root, "additive_level: lambda must lie in [0, sqrt(n)]");
    return std::clamp(1.0 - lambda / root, 0.0, 1.0);
}

LatticePath y_plus(const ThinnedWalkFamily& family, double lambda) {
    const std::size_t n = family.size();
    LatticePath y = family.walk_at(additive_level(n, lambda));
    y.scale = {1.0 / static_cast<double>(n), 1.0 / std::sqrt(static_cast<double>(n))};
    return y;
}

MassVector gamma_plus_from_walk(const LatticePath& y) {
    require(y.size() >= 2, "gamma_plus: walk too short");
    const auto ex = excursions_above_min(std::span<const std::int64_t>(y.values), ExcursionConvention::discrete());
    return sorted_lengths(ex, static_cast<double>(y.size() - 1));
}

MassVector gamma_plus(const ThinnedWalkFamily& family, double lambda) {
    return gamma_plus_from_walk(family.walk_at(additive_level(family.size(), lambda)));
}

ParkingConfiguration park(std::size_t n, std::span<const std::size_t> choices) {
    require(n >= 1, "park: n must be >= 1");
    require(choices.size() + 1 <= n, "park: at most n - 1 cars");
    ParkingConfiguration cfg;
    cfg.n = n;
    cfg.choices.assign(choices.begin(), choices.end());
    cfg.occupied.assign(n, 0);
    for (std::size_t c : choices) {
        require(c < n, "park: choice out of range");
        std::size_t p = c;
        while (cfg.occupied[p]) p = (p + 1) % n;
        cfg.occupied[p] = 1;
    }
    for (std::size_t e = 0; e < n; ++e) {
        if (cfg.occupied[e]) continue;
        std::size_t cars = 0;
        std::size_t p = (e + n - 1) % n;
        while (cfg.occupied[p]) {
            ++cars;
            p = (p + n - 1) % n;
        }
        cfg.blocks.push_back({(e + n - cars) % n, cars, e});
    }
    return cfg;
}

ParkingConfiguration park(std::size_t n, std::size_t m, Rng& rng) {
    require(n >= 1 && m < n, "park: requires m <= n - 1");
    std::uniform_int_distribution<std::size_t> place(0, n - 1);
    std::vector<std::size_t> choices(m);
    for (auto& c : choices) c = place(rng);
    return park(n, choices);
}

std::size_t ForestProcess::merges_by(double s) const {
    return static_cast<std::size_t>(
        std::upper_bound(merges.begin(), merges.end(), s,
                         [](double v, const ForestMerge& m) { return v < m.time; }) -
        merges.begin());
}

std::vector<std::size_t> ForestProcess::sizes_at(double s) const {
    std::vector<std::size_t> parent(n), size(n, 1);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& m : merges) {
        if (m.time > s) break;
        std::size_t a = find(m.node_a), b = find(m.node_b);
        parent[b] = a;
        size[a] += size[b];
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n; ++v)
        if (find(v) == v) out.push_back(size[v]);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

ForestProcess pitman_forest(std::size_t n, Rng& rng) {
    require(n >= 1, "pitman_forest: n must be >= 1");
    ForestProcess fp;
    fp.n = n;
    std::vector<std::vector<Vertex>> trees(n);
    std::vector<std::size_t> tree_of(n);
    for (Vertex v = 0; v < n; ++v) {
        trees[v] = {v};
        tree_of[v] = v;
    }
    std::exponential_distribution<double> expo(1.0);
    std::uniform_int_distribution<Vertex> any_node(0, static_cast<Vertex>(n - 1));
    double time = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t m = n - j + 1; // trees present
        time += expo(rng) / static_cast<double>(m - 1);
        // Pair {i,j} has probability (|t_i| + |t_j|) / (n (m-1)): pick a uniform
        // node, then a uniform other tree and a uniform node in it.
        const Vertex a = any_node(rng);
        const std::size_t ta = tree_of[a];
        std::uniform_int_distribution<std::size_t> other(0, m - 2);
        std::size_t tb = other(rng);
        if (tb >= ta) ++tb;
        std::uniform_int_distribution<std::size_t> pick(0, trees[tb].size() - 1);
        const Vertex b = trees[tb][pick(rng)];
        fp.merges.push_back({time, a, b, trees[ta].size(), trees[tb].size()});

        // merge tb into ta, then move the last tree into slot tb
        for (Vertex v : trees[tb]) tree_of[v] = ta;
        trees[ta].insert(trees[ta].end(), trees[tb].begin(), trees[tb].end());
        const std::size_t last = trees.size() - 1;
        if (tb != last) {
            trees[tb] = std::move(trees[last]);
            for (Vertex v : trees[tb]) tree_of[v] = tb;
        }
        trees.pop_back();
    }
    return fp;
}

std::vector<std::uint32_t> prim_out_degrees(const WeightedGraph& tree, const PrimOrdering& ord, double t) {
    require(tree.edge_count() + 1 == tree.vertex_count(), "prim_out_degrees: graph is not a tree");
    std::vector<std::uint32_t> out(ord.size(), 0);
    for (const Edge& e : tree.edges()) {
        if (e.w > t) continue;
        ++out[std::min(ord.rank[e.u], ord.rank[e.v])];
    }
    return out;
}

CayleyPercolation percolate_cayley(std::size_t n, double t, Rng& rng, TreeSampler sampler) {
    require(t >= 0.0 && t <= 1.0, "percolate_cayley: t must lie in [0,1]");
    auto edges = sampler == TreeSampler::pruefer ? pruefer_tree_edges(n, rng) : aldous_broder_tree_edges(n, rng);
    CayleyPercolation res;
    res.tree = with_uniform_weights(n, std::move(edges), rng);
    res.order = prim_order(res.tree, 0);
    res.t = t;
    const auto intervals = as_prim_intervals(level_components(res.tree, t), res.order);
    if (!intervals) throw Error("percolate_cayley: component is not a Prim interval");
    for (const auto& iv : *intervals) res.component_sizes.push_back(iv.size());
    res.thinned_out_degrees = prim_out_degrees(res.tree, res.order, t);
    return res;
}

double time_change_W(std::size_t n, double lambda, Rng& rng) {
    const double t = additive_level(n, lambda);
    std::binomial_distribution<long long> bin(static_cast<long long>(n) - 1, t);
    const auto big_n = bin(rng);
    return (static_cast<double>(n) - static_cast<double>(big_n)) / std::sqrt(static_cast<double>(n));
}

} // namespace primcoal
