#include <doctest.h>

#include <cmath>
#include <map>

#include "primcoal/additive.hpp"
#include "primcoal/excursions.hpp"
#include "primcoal/exploration.hpp"
#include "primcoal/oracles.hpp"
#include "primcoal/stats.hpp"

using namespace primcoal;

namespace {

// Rejection sampler: i.i.d. Poisson(1) increments until a first-passage path of length n.
std::vector<std::uint32_t> rejection_walk(std::size_t n, Rng& rng) {
    std::poisson_distribution<std::uint32_t> pois(1.0);
    for (;;) {
        std::vector<std::uint32_t> x(n);
        for (auto& v : x) v = pois(rng);
        if (is_first_passage(x)) return x;
    }
}

// Excursion lengths above the running minimum by first passage to each new level.
std::vector<std::size_t> ladder_lengths(const std::vector<std::uint32_t>& x) {
    std::vector<std::size_t> out;
    std::int64_t y = 0, level = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y += static_cast<std::int64_t>(x[i]) - 1;
        if (y < level) {
            out.push_back(i + 1 - start);
            start = i + 1;
            level = y;
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::string key_of(const MassVector& m, std::size_t n) {
    std::vector<long> v;
    for (double x : m.values()) v.push_back(std::lround(x * static_cast<double>(n)));
    return encode_outcome(v);
}

} // namespace

TEST_CASE("conditioned walk small cases") {
    Rng rng(1);
    CHECK(sample_conditioned_walk(1, rng).increments == std::vector<std::uint32_t>{0});
    for (int i = 0; i < 20; ++i) CHECK(sample_conditioned_walk(2, rng).increments == std::vector<std::uint32_t>{1, 0});
    CHECK_THROWS_AS(sample_conditioned_walk(0, rng), InvalidArgument);

    const auto law = conditioned_walk_law(3);
    REQUIRE(law.size() == 2);
    CHECK(law.at({2, 0, 0}) == Rational(1, 3));
    CHECK(law.at({1, 1, 0}) == Rational(2, 3));
}

TEST_CASE("conditioned walk invariants hold on every sample") {
    Rng rng(8);
    for (std::size_t n : {1, 2, 5, 17, 1000}) {
        for (int rep = 0; rep < 50; ++rep) {
            const auto w = sample_conditioned_walk(n, rng);
            REQUIRE(w.size() == n);
            REQUIRE(is_first_passage(w.increments));
            const auto y = w.path();
            CHECK(y.values.back() == -1);
        }
    }
}

TEST_CASE("cycle lemma rotation") {
    const std::vector<std::uint32_t> x{0, 2, 0, 1};
    CHECK(cycle_lemma_rotation(x) == std::vector<std::uint32_t>{2, 0, 1, 0});
    const std::vector<std::uint32_t> bad{1, 1};
    CHECK_THROWS_AS(cycle_lemma_rotation(bad), InvalidArgument);
}

TEST_CASE("cycle-lemma sampler matches rejection sampler and exact law") {
    for (std::size_t n : {4, 6}) {
        Rng rng(100 + n);
        EmpiricalDistribution fast, slow, exact;
        for (const auto& [seq, p] : conditioned_walk_law(n)) exact.add(encode_outcome(seq), p.value());
        const int N = 40000;
        for (int i = 0; i < N; ++i) {
            fast.add(encode_outcome(sample_conditioned_walk(n, rng).increments));
            slow.add(encode_outcome(rejection_walk(n, rng)));
        }
        CHECK(tv_distance(fast, exact) < 0.03);
        CHECK(tv_distance(slow, exact) < 0.03);
    }
}

TEST_CASE("thinning extremes and monotone coupling") {
    Rng rng(12);
    const auto base = sample_conditioned_walk(50, rng);
    const ThinnedWalkFamily fam(base, rng);
    CHECK(fam.walk_at(1.0).values == base.path().values);
    const auto y0 = fam.walk_at(0.0);
    for (std::size_t m = 0; m < y0.size(); ++m) CHECK(y0[m] == -static_cast<std::int64_t>(m));
    const auto a = fam.increments_at(0.3), b = fam.increments_at(0.7);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] <= b[i]);
    CHECK_THROWS_AS(ThinnedWalkFamily(base, std::vector<double>{0.5}), InvalidArgument);
}

TEST_CASE("thinned total is binomial") {
    Rng rng(31);
    const std::size_t n = 20;
    const double t = 0.4;
    EmpiricalDistribution got, want;
    const int N = 40000;
    for (int i = 0; i < N; ++i) {
        const auto x = ThinnedWalkFamily(sample_conditioned_walk(n, rng), rng).increments_at(t);
        std::uint32_t s = 0;
        for (auto v : x) s += v;
        got.add(std::to_string(s));
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double logp = std::lgamma(n) - std::lgamma(k + 1.0) - std::lgamma(n - k + 0.0) +
                            static_cast<double>(k) * std::log(t) + static_cast<double>(n - 1 - k) * std::log(1 - t);
        want.add(std::to_string(k), std::exp(logp));
    }
    CHECK(tv_distance(got, want) < 0.03);
}

TEST_CASE("gamma plus extremes and domain") {
    Rng rng(2);
    const std::size_t n = 25;
    const ThinnedWalkFamily fam(sample_conditioned_walk(n, rng), rng);
    const auto g0 = gamma_plus(fam, 0.0);
    CHECK(g0[0] == doctest::Approx(1.0));
    CHECK(g0[1] == 0.0);
    const auto gt = gamma_plus(fam, 5.0); // t = 0
    REQUIRE(gt.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(gt[i] == doctest::Approx(1.0 / n));
    CHECK(gamma_plus(fam, 2.5).l1() == doctest::Approx(1.0));
    CHECK_THROWS_AS(gamma_plus(fam, 5.01), InvalidArgument);
    CHECK_THROWS_AS(additive_level(n, -0.5), InvalidArgument);
}

TEST_CASE("gamma plus at n=3, lambda=1 matches enumeration") {
    const std::size_t n = 3;
    const double t = 1.0 - 1.0 / std::sqrt(3.0);
    EmpiricalDistribution exact, sim;
    for (const auto& [seq, p] : thinned_walk_law(n, t)) {
        auto lens = ladder_lengths(seq);
        exact.add(encode_outcome(lens), p);
    }
    Rng rng(3);
    for (int i = 0; i < 100000; ++i) {
        const ThinnedWalkFamily fam(sample_conditioned_walk(n, rng), rng);
        sim.add(key_of(gamma_plus(fam, 1.0), n));
    }
    CHECK(exact.support_size() == 3);
    CHECK(tv_distance(exact, sim) < 0.01);
}

TEST_CASE("parking examples") {
    const std::vector<std::size_t> two{0, 0};
    const auto cfg = park(3, two);
    CHECK(cfg.occupied == std::vector<char>{1, 1, 0});
    REQUIRE(cfg.blocks.size() == 1);
    CHECK(cfg.blocks[0].size() == 3);

    const auto empty = park(4, std::span<const std::size_t>{});
    CHECK(empty.blocks.size() == 4);
    for (const auto& b : empty.blocks) CHECK(b.size() == 1);

    Rng rng(5);
    const auto full = park(7, 6, rng);
    REQUIRE(full.blocks.size() == 1);
    CHECK(full.blocks[0].size() == 7);
    CHECK_THROWS_AS(park(3, 3, rng), InvalidArgument);
}

TEST_CASE("parking blocks equal walk excursions for every choice vector") {
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t m = 0; m < n; ++m) {
            std::size_t count = 1;
            for (std::size_t i = 0; i < m; ++i) count *= n;
            for (std::size_t code = 0; code < count; ++code) {
                std::vector<std::size_t> ch(m);
                std::size_t c = code;
                for (auto& v : ch) {
                    v = c % n;
                    c /= n;
                }
                const auto cfg = park(n, ch);
                if (cfg.occupied[n - 1]) continue;
                std::vector<std::int64_t> y{0};
                std::vector<std::int64_t> x(n, 0);
                for (auto v : ch) ++x[v];
                for (std::size_t i = 0; i < n; ++i) y.push_back(y.back() + x[i] - 1);
                const auto ex = excursions_above_min(std::span<const std::int64_t>(y));
                REQUIRE(ex.size() == cfg.blocks.size());
                for (std::size_t b = 0; b < ex.size(); ++b) {
                    CHECK(ex.intervals[b].begin == cfg.blocks[b].start);
                    CHECK(ex.intervals[b].length() == cfg.blocks[b].size());
                }
            }
        }
    }
}

TEST_CASE("forest process") {
    Rng rng(6);
    double mean = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        const auto fp = pitman_forest(2, rng);
        REQUIRE(fp.merges.size() == 1);
        mean += fp.merges[0].time;
    }
    CHECK(mean / N == doctest::Approx(1.0).epsilon(0.03));

    const auto fp = pitman_forest(9, rng);
    REQUIRE(fp.merges.size() == 8);
    CHECK(fp.merges_by(0.0) == 0);
    CHECK(fp.merges_by(1e9) == 8);
    for (std::size_t j = 0; j < 8; ++j) {
        const double s = fp.merges[j].time;
        CHECK(fp.merges_by(s) == j + 1);
        std::size_t total = 0;
        for (auto v : fp.sizes_at(s)) total += v;
        CHECK(total == 9);
        CHECK(fp.sizes_at(s).size() == 9 - (j + 1));
    }
}

TEST_CASE("cayley out-degrees equal the conditioned walk law") {
    const auto law3 = enumerate_cayley(3);
    REQUIRE(law3.size() == 2);
    CHECK(law3.at({2, 0, 0}) == Rational(1, 3));
    CHECK(law3.at({1, 1, 0}) == Rational(2, 3));
    for (std::size_t n : {3, 4, 5, 6}) CHECK(enumerate_cayley(n) == conditioned_walk_law(n));
}

TEST_CASE("percolated cayley tree") {
    Rng rng(17);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 1 + rep % 30;
        const double t = uniform_open(rng);
        const auto perc = percolate_cayley(n, t, rng, rep % 2 ? TreeSampler::aldous_broder : TreeSampler::pruefer);
        const auto ex = explore(perc.tree, t, ExplorationOrder::prim(perc.order));
        REQUIRE(component_sizes_from_zeros(ex.z) == perc.component_sizes);
    }
}

TEST_CASE("prim-ordered thinned out-degrees have the thinned walk law") {
    const std::size_t n = 6;
    const double t = 0.5;
    EmpiricalDistribution exact, sim;
    for (const auto& [seq, p] : thinned_walk_law(n, t)) exact.add(encode_outcome(seq), p);
    Rng rng(606);
    for (int i = 0; i < 100000; ++i) sim.add(encode_outcome(percolate_cayley(n, t, rng).thinned_out_degrees));
    CHECK(tv_distance(exact, sim) < 0.04);
}

TEST_CASE("time change") {
    Rng rng(21);
    const std::size_t n = 400;
    const double lambda = 2.0;
    double mean = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) mean += time_change_W(n, lambda, rng);
    const double expect = (n - (n - 1) * (1 - lambda / 20.0)) / 20.0;
    CHECK(mean / N == doctest::Approx(expect).epsilon(0.02));
}
