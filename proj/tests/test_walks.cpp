#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "primcoal/excursions.hpp"
#include "primcoal/exploration.hpp"
#include "primcoal/filtration.hpp"
#include "primcoal/lattice_path.hpp"

using namespace primcoal;

namespace {

std::vector<std::size_t> sorted_desc(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

} // namespace

TEST_CASE("psi and running minimum") {
    const std::vector<std::int64_t> f{0, 1, 0, -1, 0, 1};
    CHECK(psi(std::span<const std::int64_t>(f)) == std::vector<std::int64_t>{0, 1, 0, 0, 1, 2});
    CHECK(running_min(std::span<const std::int64_t>(f)) == std::vector<std::int64_t>{0, 0, 0, -1, -1, -1});
    const std::vector<std::int64_t> pos{0, 2, 1, 3, 0};
    CHECK(psi(std::span<const std::int64_t>(pos)) == pos);
    const std::vector<double> g{0.0, -0.5, 0.25};
    const auto pg = psi(std::span<const double>(g));
    CHECK(pg[2] == doctest::Approx(0.75));
}

TEST_CASE("lattice path rescaling and trace") {
    LatticePath p{{0, 2, 4}, {0.5, 0.1}};
    CHECK(p.at(0.25) == doctest::Approx(0.1));
    CHECK(p.at(5.0) == doctest::Approx(0.4));
    std::ostringstream os;
    write_trace_csv(os, p);
    CHECK(os.str().rfind("index,value,psi_value,running_min\n", 0) == 0);
}

TEST_CASE("excursion examples") {
    const std::vector<std::int64_t> z{0, 1, 1, 0, 2, 1, 0};
    CHECK(excursions_above_zero(std::span<const std::int64_t>(z)).lengths() == std::vector<std::size_t>{3, 3});

    const std::vector<std::int64_t> flat(6, 0);
    CHECK(excursions_above_min(std::span<const std::int64_t>(flat), ExcursionConvention{1, 1.0}).size() == 0);

    CHECK_THROWS_AS(excursions_above_zero(std::span<const std::int64_t>(std::vector<std::int64_t>{0, -1})),
                    InvalidArgument);
    CHECK_THROWS_AS(excursions_above_zero(std::span<const std::int64_t>(z), ExcursionConvention{0, 1.0}),
                    InvalidArgument);
}

TEST_CASE("alpha sets a minimum excursion length") {
    const std::vector<std::int64_t> z{0, 1, 0, 0, 1, 0};
    CHECK(excursions_above_zero(std::span<const std::int64_t>(z)).lengths() == std::vector<std::size_t>{2, 1, 2});
    CHECK(excursions_above_zero(std::span<const std::int64_t>(z), ExcursionConvention{2, 1.0}).lengths() ==
          std::vector<std::size_t>{2, 3});
}

TEST_CASE("excursions above the minimum equal zero excursions of psi") {
    const std::vector<std::int64_t> f{0, 1, 0, -1, 0, 1};
    const auto above = excursions_above_min(std::span<const std::int64_t>(f), ExcursionConvention::continuum());
    const auto pf = psi(std::span<const std::int64_t>(f));
    const auto zero = excursions_above_zero(std::span<const std::int64_t>(pf), ExcursionConvention::continuum());
    CHECK(above.intervals == zero.intervals);
    CHECK(above.lengths() == std::vector<std::size_t>{2, 1});

    Rng rng(9);
    std::uniform_int_distribution<int> step(-1, 2);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<std::int64_t> w{0};
        for (int k = 0; k < 40; ++k) w.push_back(w.back() + step(rng));
        const auto pw = psi(std::span<const std::int64_t>(w));
        REQUIRE(excursions_above_min(std::span<const std::int64_t>(w), ExcursionConvention::continuum()).intervals ==
                excursions_above_zero(std::span<const std::int64_t>(pw), ExcursionConvention::continuum()).intervals);
    }
}

TEST_CASE("sorted lengths") {
    ExcursionSet e{{{0, 3}, {3, 6}, {6, 7}}, {}};
    const auto m = sorted_lengths(e, 7.0);
    CHECK(m[0] == doctest::Approx(3.0 / 7));
    CHECK(m[1] == doctest::Approx(3.0 / 7));
    CHECK(m[2] == doctest::Approx(1.0 / 7));
    CHECK(m[3] == 0.0);
    CHECK(sorted_lengths(ExcursionSet{}, 1.0).size() == 0);
    ExcursionSet f{{{0, 1}, {1, 6}, {6, 8}}, {}};
    const auto mf = sorted_lengths(f, 1.0);
    CHECK(mf[0] == 5.0);
    CHECK(mf[1] == 2.0);
    CHECK(mf[2] == 1.0);
}

TEST_CASE("exploration examples") {
    const WeightedGraph k3(3, {{0, 1, 0.2}, {0, 2, 0.5}, {1, 2, 0.3}});
    const auto ex = explore(k3, 0.25, ExplorationOrder::prim(prim_order(k3, 0)));
    CHECK(ex.z.values == std::vector<std::int64_t>{0, 1, 0, 0, 0});
    CHECK(component_sizes_from_zeros(ex.z) == std::vector<std::size_t>{2, 1});

    CHECK(explore(k3, 0.0, ExplorationOrder::labels(3)).z.values == std::vector<std::int64_t>(5, 0));

    Rng rng(1);
    const auto k4 = complete_graph(4, rng);
    for (const auto& order : {ExplorationOrder::labels(4), ExplorationOrder::prim(prim_order(k4, 0))})
        CHECK(explore(k4, 1.0, order).z.values == std::vector<std::int64_t>{0, 3, 2, 1, 0, 0});
}

TEST_CASE("exploration zeros give union-find component sizes") {
    Rng rng(4242);
    for (int rep = 0; rep < 400; ++rep) {
        const std::size_t n = 1 + rep % 60;
        const auto g = rep % 3 ? complete_graph(n, rng) : with_uniform_weights(n, pruefer_tree_edges(n, rng), rng);
        const double t = uniform_open(rng) * (rep % 3 ? 2.0 / static_cast<double>(n) : 1.0);
        const auto ord = prim_order(g, 0);
        std::vector<std::size_t> uf;
        for (const auto& b : ComponentFiltration(g, ord).blocks_at(t)) uf.push_back(b.size);
        uf = sorted_desc(uf);
        for (const auto& order : {ExplorationOrder::labels(n), ExplorationOrder::prim(ord)}) {
            const auto ex = explore(g, t, order);
            REQUIRE(sorted_desc(component_sizes_from_zeros(ex.z)) == uf);
            const auto z = std::span<const std::int64_t>(ex.z.values).first(n + 1);
            REQUIRE(sorted_desc(excursions_above_zero(z).lengths()) == uf);
        }
    }
}
