// Acceptance suite: one PASS/FAIL line per criterion; exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "primcoal/common.hpp"
#include "primcoal/experiment.hpp"
#include "primcoal/format.hpp"
#include "primcoal/oracles.hpp"

using namespace primcoal;
using nlohmann::json;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentResult run(json j) {
    j["workers"] = 0;
    return run_experiment(resolve_config(j, json()));
}

const TestVerdict& verdict(const ExperimentResult& r, const std::string& id) {
    for (const auto& v : r.verdicts)
        if (v.description.rfind(id + ":", 0) == 0) return v;
    throw Error("acceptance: no verdict '" + id + "'");
}

std::string describe(const TestVerdict& v) {
    return v.description.substr(0, v.description.find(':')) + " statistic=" + format_double(v.statistic) +
           " threshold=" + format_double(v.threshold);
}

Outcome prim_intervals() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run({{"kind", "verify-invariants"}, {"n", 64}, {"replicates", 10000}, {"seed", 101}});
    const double secs = seconds_since(t0);
    const auto& v = verdict(r, "prim-intervals");
    return {v.passed && secs < 30.0,
            std::to_string(v.sample_size_a) + " graphs (K_n and uniform trees, n<=64), " +
                std::to_string(static_cast<long>(v.statistic)) + " violations, " + format_double(secs) + " s (< 30 s)"};
}

Outcome excursion_identity() {
    const auto r = run({{"kind", "verify-invariants"}, {"n", 256}, {"replicates", 2000}, {"seed", 202}});
    const auto& a = verdict(r, "excursions-components");
    const auto& b = verdict(r, "psi-lemma");
    return {a.passed && b.passed, describe(a) + "; " + describe(b) + " over " + std::to_string(a.sample_size_a) +
                                      " realisations, n<=256, both orders"};
}

Outcome four_node_example() {
    const auto r = run({{"kind", "compare-orders"}, {"replicates", 100}, {"seed", 303}});
    const auto& a = verdict(r, "prim-visit-probability");
    const auto& b = verdict(r, "standard-visit-probability");
    return {a.passed && b.passed, a.description + "; " + b.description};
}

Outcome cayley_identity() {
    bool ok = true;
    std::string detail;
    for (std::size_t n : {3, 4}) {
        const auto trees = enumerate_cayley(n);
        const auto walks = conditioned_walk_law(n);
        ok = ok && trees == walks;
        detail += "n=" + std::to_string(n) + ": " + std::to_string(trees.size()) + " sequences " +
                  (trees == walks ? "equal" : "differ") + "; ";
    }
    const auto three = enumerate_cayley(3);
    const bool values = three.size() == 2 && three.at({2, 0, 0}) == Rational(1, 3) && three.at({1, 1, 0}) == Rational(2, 3);
    return {ok && values, detail + "n=3 law (2,0,0)->1/3, (1,1,0)->2/3 " + (values ? "confirmed" : "NOT confirmed")};
}

Outcome walk_vs_graph() {
    const auto r = run({{"kind", "augmented"}, {"n", 6}, {"lambda", 0}, {"replicates", 100000}, {"seed", 505}});
    const auto& v = verdict(r, "walk-vs-graph");
    return {v.passed, describe(v) + ", N=" + std::to_string(v.sample_size_a) + " per side"};
}

Outcome surplus_identity() {
    // even replicates are complete graphs: 2000 cases give 1000 complete-graph realisations
    const auto r = run({{"kind", "verify-invariants"},
                        {"n", 512},
                        {"lambda", {-1, 0, 1}},
                        {"replicates", 2000},
                        {"seed", 606}});
    const auto& v = verdict(r, "surplus-identity");
    return {v.passed && v.sample_size_a >= 1000,
            describe(v) + " over " + std::to_string(v.sample_size_a) + " complete graphs, n<=512, lambda in {-1,0,1}"};
}

Outcome multiplicative_marginal() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run({{"kind", "limit-compare"},
                        {"coalescent", "multiplicative"},
                        {"n", 50000},
                        {"lambda", 0},
                        {"replicates", 1000},
                        {"dx", 1e-3},
                        {"horizon", 10},
                        {"seed", 707}});
    const double secs = seconds_since(t0);
    const auto& v = verdict(r, "largest-component");
    return {v.passed && secs < 300.0, describe(v) + ", " + format_double(secs) + " s (< 300 s)"};
}

Outcome additive_marginal() {
    const auto r = run({{"kind", "limit-compare"},
                        {"coalescent", "additive"},
                        {"n", 10000},
                        {"lambda", 1},
                        {"replicates", 1000},
                        {"dx", 1e-3},
                        {"seed", 808}});
    const auto& v = verdict(r, "largest-block");
    return {v.passed, describe(v)};
}

Outcome kernel_oracles() {
    const auto r = run({{"kind", "ml-oracle"}, {"n", 6}, {"lambda", 0}, {"time", 0.5}, {"replicates", 100000}, {"seed", 909}});
    const auto& a = verdict(r, "ml-multiplicative");
    const auto& b = verdict(r, "ml-additive");
    return {a.passed && b.passed, describe(a) + "; " + describe(b)};
}

Outcome monotone_coupling() {
    std::vector<double> grid;
    for (int i = -8; i <= 8; ++i) grid.push_back(0.5 * i);
    const auto r = run({{"kind", "simulate-multiplicative"},
                        {"route", "graph"},
                        {"n", 10000},
                        {"lambda", grid},
                        {"replicates", 200},
                        {"seed", 1010}});
    const auto& v = verdict(r, "monotone-coupling");
    return {v.passed, describe(v) + " over " + std::to_string(v.sample_size_a) + " realisations, 17-point grid, n=10^4"};
}

Outcome performance() {
    const auto dir = std::filesystem::temp_directory_path() / "primcoal_acceptance_trace";
    auto t0 = std::chrono::steady_clock::now();
    const auto trace = run({{"kind", "trace"}, {"n", 100000}, {"lambda", 0}, {"seed", 1111}});
    write_outputs(trace, dir.string());
    const double trace_secs = seconds_since(t0);
    std::filesystem::remove_all(dir);

    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(-2.0 + 0.5 * i);
    t0 = std::chrono::steady_clock::now();
    const auto graph = run({{"kind", "simulate-multiplicative"},
                            {"route", "graph"},
                            {"n", 100000},
                            {"lambda", grid},
                            {"replicates", 1},
                            {"seed", 1112}});
    const double graph_secs = seconds_since(t0);
    return {trace.passed() && graph.passed() && trace_secs < 1.0 && graph_secs < 10.0,
            "walk-route trace n=10^5: " + format_double(trace_secs) + " s (< 1 s); 10-point graph-route grid n=10^5: " +
                format_double(graph_secs) + " s (< 10 s)"};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Prim-interval property", prim_intervals},
        {"excursion/component identity", excursion_identity},
        {"four-node exact probabilities", four_node_example},
        {"Cayley/conditioned-walk identity", cayley_identity},
        {"walk-route vs graph-route law", walk_vs_graph},
        {"surplus field identity", surplus_identity},
        {"multiplicative marginal (KS)", multiplicative_marginal},
        {"additive marginal (KS)", additive_marginal},
        {"kernel oracles (TV)", kernel_oracles},
        {"monotone coupling", monotone_coupling},
        {"performance", performance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failures;
        std::printf("criterion %2zu %s: %s -- %s\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
