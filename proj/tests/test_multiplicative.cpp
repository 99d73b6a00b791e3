#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "primcoal/filtration.hpp"
#include "primcoal/multiplicative.hpp"
#include "primcoal/stats.hpp"

using namespace primcoal;

namespace {

std::string outcome_key(std::vector<std::pair<std::size_t, std::uint64_t>> comps) {
    std::sort(comps.begin(), comps.end(), std::greater<>());
    std::vector<std::uint64_t> flat;
    for (const auto& [s, x] : comps) {
        flat.push_back(s);
        flat.push_back(x);
    }
    return encode_outcome(flat);
}

std::string walk_key(const std::vector<WalkComponent>& cs) {
    std::vector<std::pair<std::size_t, std::uint64_t>> v;
    for (const auto& c : cs) v.emplace_back(c.size(), c.surplus);
    return outcome_key(v);
}

std::string block_key(const std::vector<Block>& bs) {
    std::vector<std::pair<std::size_t, std::uint64_t>> v;
    for (const auto& b : bs) v.emplace_back(b.size, b.excess());
    return outcome_key(v);
}

} // namespace

TEST_CASE("critical window probability") {
    CHECK(p_lambda(8, 2.0) == doctest::Approx(0.25));
    CHECK(p_lambda(37, 0.0) == doctest::Approx(1.0 / 37));
    CHECK(p_lambda(1000, -1.0) == doctest::Approx(0.0009));
    CHECK_THROWS_AS(p_lambda(8, -100.0), InvalidArgument);
    CHECK(homogeneous_time(0.5) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("uniform field") {
    Rng rng(1);
    CHECK_THROWS_AS(UniformField(4, std::vector<double>(5, 0.5)), InvalidArgument);
    CHECK_THROWS_AS(UniformField(UniformField::max_full_n + 1, rng), InvalidArgument);
    std::vector<double> e{0.1, 0.2, 0.3, 0.4, 0.5, 0.6}; // rows: (1;2,3,4) (2;3,4) (3;4)
    const UniformField f(4, e);
    CHECK(f.star(1, 2) == 0.1);
    CHECK(f.star(2, 4) == 0.5);
    CHECK(f.star(3, 4) == 0.6);
    CHECK(f.planar(0, 1) == 0.1);
    CHECK(f.planar(1, 2) == 0.5);
}

TEST_CASE("z walk extremes and reflection identity") {
    Rng rng(2);
    const std::size_t n = 40;
    const UniformField f(n, rng);
    const auto w0 = z_walk(0.0, f);
    for (std::size_t i = 0; i <= n; ++i) {
        CHECK(w0.z[i] == 0);
        CHECK(w0.y[i] == -static_cast<std::int64_t>(i));
    }
    const auto w1 = z_walk(1.0, f);
    const auto c1 = walk_components(w1.z);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].size() == n);
    const auto s1 = surplus_field(w1, f);
    CHECK(s1[0].surplus == n * (n - 1) / 2 - (n - 1));
    for (auto s : surplus_field(w0, f)) CHECK(s.surplus == 0);

    for (int rep = 0; rep < 200; ++rep) {
        const UniformField g(4, rng);
        const auto w = z_walk(uniform_open(rng), g);
        CHECK(z_reflects_y(w.z, w.y));
    }
    CHECK_THROWS_AS(z_walk(CriticalWindowParams{5, 0.0}, f), InvalidArgument);
}

TEST_CASE("z is not literally psi of y") {
    std::vector<double> e(6, 0.9); // t = 0.5: no edges at all
    const auto w = z_walk(0.5, UniformField(4, e));
    const auto p = psi(w.y);
    CHECK(w.z.values == std::vector<std::int64_t>{0, 0, 0, 0, 0});
    CHECK(p.values == std::vector<std::int64_t>{0, 0, 0, 0, 0});
    std::vector<double> g{0.1, 0.9, 0.9, 0.9, 0.9, 0.9}; // only edge (1,2)
    const auto v = z_walk(0.5, UniformField(4, g));
    CHECK(v.z.values == std::vector<std::int64_t>{0, 1, 0, 0, 0});
    CHECK(psi(v.y).values == std::vector<std::int64_t>{0, 0, 0, 0, 0});
}

TEST_CASE("field surplus equals graph excess") {
    Rng rng(99);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rep) * 3;
        const auto g = complete_graph(n, rng);
        const auto ord = prim_order(g, 0);
        const auto field = reorder_field_from_graph(g, ord);
        const ComponentFiltration filt(g, ord);
        for (double t : {p_lambda(n, -1.0), p_lambda(n, 0.0), p_lambda(n, 1.0), std::min(1.0, 4.0 / n), uniform_open(rng)}) {
            const auto comps = surplus_field(z_walk(t, field), field);
            const auto blocks = filt.blocks_at(t);
            REQUIRE(comps.size() == blocks.size());
            for (std::size_t c = 0; c < comps.size(); ++c) {
                CHECK(comps[c].first - 1 == blocks[c].first);
                CHECK(comps[c].last - 1 == blocks[c].last);
                CHECK(comps[c].surplus == blocks[c].excess());
            }
        }
    }
    Rng r2(3);
    CHECK_THROWS_AS(reorder_field_from_graph(with_uniform_weights(4, pruefer_tree_edges(4, r2), r2),
                                             prim_order(complete_graph(4, r2))),
                    InvalidArgument);
}

TEST_CASE("walk route, sparse route and graph route agree in law at n=6") {
    const std::size_t n = 6;
    const double t = p_lambda(n, 0.0);
    EmpiricalDistribution field, sparse, graph, dense;
    Rng rng(6006);
    const int N = 30000;
    const std::vector<double> grid{0.0};
    for (int i = 0; i < N; ++i) {
        const UniformField f(n, rng);
        field.add(walk_key(surplus_field(z_walk(t, f), f)));
        sparse.add(walk_key(z_walk_sparse(n, t, rng).components));
        graph.add(block_key(graph_route(n, grid, rng).snapshots[0].components));
        const auto k = complete_graph(n, rng);
        dense.add(block_key(ComponentFiltration(k, prim_order(k, 0)).blocks_at(t)));
    }
    CHECK(tv_distance(field, graph) < 0.04);
    CHECK(tv_distance(sparse, graph) < 0.04);
    CHECK(tv_distance(dense, graph) < 0.04);
}

TEST_CASE("graph route coupling") {
    Rng rng(5);
    const std::size_t n = 300;
    const std::vector<double> grid{1.0, -1.0, 0.0, 2.0};
    const auto route = graph_route(n, grid, rng, true);
    REQUIRE(route.snapshots.size() == 4);
    CHECK(route.snapshots[0].lambda == 1.0);
    CHECK(route.p_max == doctest::Approx(p_lambda(n, 2.0)));
    // lambda -1 <= 0 <= 1 <= 2: each partition refines the next
    const std::vector<std::size_t> chain{1, 2, 0, 3};
    for (std::size_t c = 0; c + 1 < chain.size(); ++c) {
        const auto& fine = route.snapshots[chain[c]].labels;
        const auto& coarse = route.snapshots[chain[c + 1]].labels;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; v += 7)
                if (fine[u] == fine[v]) CHECK(coarse[u] == coarse[v]);
        const auto a = augmented_state(n, route.snapshots[chain[c]].components).masses;
        const auto b = augmented_state(n, route.snapshots[chain[c + 1]].components).masses;
        for (std::size_t k = 1; k < 20; ++k) CHECK(a.partial_sum_squares(k) <= b.partial_sum_squares(k) + 1e-12);
    }
    const std::vector<double> bad{2.0};
    CHECK_THROWS_AS(graph_route_p(n, bad, rng), InvalidArgument);

    double edges = 0.0;
    const int N = 2000;
    const std::vector<double> zero{0.0};
    for (int i = 0; i < N; ++i) edges += static_cast<double>(graph_route(50, zero, rng).edges_sampled);
    CHECK(edges / N == doctest::Approx(49.0 / 2).epsilon(0.03));
}

TEST_CASE("gamma times extremes") {
    const std::size_t n = 27;
    const std::vector<std::size_t> whole{n};
    CHECK(gamma_times(n, whole)[0] == doctest::Approx(3.0));
    const std::vector<std::size_t> ones(n, 1);
    const auto g = gamma_times(n, ones);
    CHECK(g.size() == n);
    CHECK(g[n - 1] == doctest::Approx(1.0 / 9));
}

TEST_CASE("augmented metric") {
    const auto a = AugmentedState::from_pairs({{1.0, 2}});
    const auto b = AugmentedState::from_pairs({{1.0, 0}});
    CHECK(d_U(a, a) == 0.0);
    CHECK(d_U(a, b) == doctest::Approx(2.0));
    const auto c = AugmentedState::from_pairs({{1.0, 0}});
    const AugmentedState d;
    CHECK(d_U(c, d) == doctest::Approx(1.0));
    const auto e = AugmentedState::from_pairs({{0.5, 1}, {2.0, 0}});
    CHECK(e.masses[0] == 2.0);
    CHECK(e.surplus(0) == 0);
    CHECK(e.surplus(1) == 1);
}
