#include "primcoal/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "primcoal/additive.hpp"
#include "primcoal/exploration.hpp"
#include "primcoal/prim.hpp"

namespace primcoal {

Rational::Rational(std::int64_t num, std::int64_t den) {
    require(den != 0, "Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g ? num / g : 0;
    den_ = g ? den / g : 1;
}

Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t l = std::lcm(a.den_, b.den_);
    return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

Rational operator*(const Rational& a, const Rational& b) {
    // cross-cancel before multiplying to keep intermediates small
    const std::int64_t g1 = std::max<std::int64_t>(std::gcd(a.num_, b.den_), 1);
    const std::int64_t g2 = std::max<std::int64_t>(std::gcd(b.num_, a.den_), 1);
    return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
}

Rational enumerate_weight_orders(std::size_t n, const std::vector<Edge>& edges,
                                 const std::function<bool(const WeightedGraph&)>& event) {
    const std::size_t m = edges.size();
    require(m <= 10, "enumerate_weight_orders: more than 10 edges");
    std::vector<std::size_t> rank(m);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::int64_t hits = 0, total = 0;
    std::vector<Edge> weighted = edges;
    do {
        for (std::size_t e = 0; e < m; ++e)
            weighted[e].w = static_cast<double>(rank[e] + 1) / static_cast<double>(m + 1);
        if (event(WeightedGraph(n, weighted))) ++hits;
        ++total;
    } while (std::next_permutation(rank.begin(), rank.end()));
    return Rational(hits, total);
}

Rational enumerate_relabellings(std::size_t n, Vertex fixed,
                                const std::function<bool(const std::vector<std::size_t>&)>& event) {
    require(fixed < n, "enumerate_relabellings: fixed vertex out of range");
    require(n <= 10, "enumerate_relabellings: n > 10");
    std::vector<std::size_t> others;
    for (std::size_t v = 0; v < n; ++v)
        if (v != fixed) others.push_back(v);
    std::vector<std::size_t> perm = others;
    std::int64_t hits = 0, total = 0;
    do {
        std::vector<std::size_t> label(n);
        label[fixed] = fixed;
        for (std::size_t i = 0; i < others.size(); ++i) label[others[i]] = perm[i];
        if (event(label)) ++hits;
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Rational(hits, total);
}

Rational prim_visit_probability(std::size_t n, const std::vector<Edge>& edges, const std::vector<Vertex>& target) {
    require(target.size() == n, "prim_visit_probability: target must list every vertex");
    return enumerate_weight_orders(n, edges, [&](const WeightedGraph& g) {
        return explore(g, 1.0, ExplorationOrder::prim(prim_order(g, target.front()))).visit_order == target;
    });
}

Rational standard_visit_probability(std::size_t n, const std::vector<Edge>& edges,
                                    const std::vector<Vertex>& target) {
    require(target.size() == n, "standard_visit_probability: target must list every vertex");
    require(target.front() == 0, "standard_visit_probability: exploration starts at vertex 0");
    std::vector<Edge> weighted = edges;
    for (std::size_t e = 0; e < weighted.size(); ++e)
        weighted[e].w = static_cast<double>(e + 1) / static_cast<double>(weighted.size() + 1);
    const WeightedGraph g(n, weighted);
    return enumerate_relabellings(n, target.front(), [&](const std::vector<std::size_t>& label) {
        return explore(g, 1.0, ExplorationOrder{label}).visit_order == target;
    });
}

std::vector<std::uint32_t> bfs_out_degrees(std::size_t n, const std::vector<Edge>& edges, Vertex root) {
    require(edges.size() + 1 == n, "bfs_out_degrees: not a tree");
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<char> seen(n, 0);
    std::queue<Vertex> q;
    q.push(root);
    seen[root] = 1;
    std::vector<std::uint32_t> out;
    while (!q.empty()) {
        const Vertex v = q.front();
        q.pop();
        std::uint32_t children = 0;
        for (Vertex w : adj[v]) {
            if (seen[w]) continue;
            seen[w] = 1;
            ++children;
            q.push(w);
        }
        out.push_back(children);
    }
    return out;
}

DegreeLaw enumerate_cayley(std::size_t n) {
    require(n >= 2 && n <= 7, "enumerate_cayley: 2 <= n <= 7");
    std::size_t count = 1;
    for (std::size_t i = 0; i + 2 < n; ++i) count *= n;
    DegreeLaw law;
    std::vector<Vertex> seq(n - 2, 0);
    for (std::size_t code = 0; code < count; ++code) {
        std::size_t c = code;
        for (auto& s : seq) {
            s = static_cast<Vertex>(c % n);
            c /= n;
        }
        const auto degrees = bfs_out_degrees(n, pruefer_decode(n, seq), 0);
        law[degrees] = law[degrees] + Rational(1, static_cast<std::int64_t>(count));
    }
    return law;
}

DegreeLaw conditioned_walk_law(std::size_t n) {
    require(n >= 1 && n <= 10, "conditioned_walk_law: 1 <= n <= 10");
    std::vector<std::int64_t> fact(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * static_cast<std::int64_t>(i);

    std::map<std::vector<std::uint32_t>, std::int64_t> weight;
    std::int64_t total = 0;
    std::vector<std::uint32_t> x(n, 0);
    // depth-first over compositions of n-1 into n parts, pruning non-first-passage prefixes
    std::function<void(std::size_t, std::int64_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left,
                                                                          std::int64_t y) {
        if (i == n) {
            if (left == 0 && y == -1) {
                std::int64_t w = fact[n - 1];
                for (auto v : x) w /= fact[v];
                weight[x] = w;
                total += w;
            }
            return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            const std::int64_t ny = y + v - 1;
            if (i + 1 < n && ny < 0) continue;
            x[i] = static_cast<std::uint32_t>(v);
            rec(i + 1, left - v, ny);
        }
    };
    rec(0, static_cast<std::int64_t>(n) - 1, 0);
    DegreeLaw law;
    for (const auto& [seq, w] : weight) law[seq] = Rational(w, total);
    return law;
}

std::map<std::vector<std::uint32_t>, double> thinned_walk_law(std::size_t n, double t) {
    require(t >= 0.0 && t <= 1.0, "thinned_walk_law: t must lie in [0,1]");
    std::map<std::vector<std::uint32_t>, double> law;
    for (const auto& [x, p] : conditioned_walk_law(n)) {
        // expand the product of Binomial(x_i, t) laws
        std::vector<std::pair<std::vector<std::uint32_t>, double>> partial{{{}, p.value()}};
        for (std::uint32_t xi : x) {
            std::vector<std::pair<std::vector<std::uint32_t>, double>> next;
            for (const auto& [prefix, q] : partial) {
                for (std::uint32_t k = 0; k <= xi; ++k) {
                    double binom = 1.0;
                    for (std::uint32_t j = 0; j < k; ++j) binom = binom * (xi - j) / (j + 1);
                    auto seq = prefix;
                    seq.push_back(k);
                    next.emplace_back(std::move(seq), q * binom * std::pow(t, k) * std::pow(1.0 - t, xi - k));
                }
            }
            partial = std::move(next);
        }
        for (const auto& [seq, q] : partial) law[seq] += q;
    }
    return law;
}

} // namespace primcoal
