#include "primcoal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "primcoal/additive.hpp"
#include "primcoal/exploration.hpp"
#include "primcoal/filtration.hpp"
#include "primcoal/format.hpp"
#include "primcoal/limit.hpp"
#include "primcoal/multiplicative.hpp"
#include "primcoal/oracles.hpp"

namespace primcoal {

using nlohmann::json;

namespace {

constexpr const char* kSimulateAdditive = "simulate-additive";
constexpr const char* kSimulateMultiplicative = "simulate-multiplicative";
constexpr const char* kCompareOrders = "compare-orders";
constexpr const char* kVerifyInvariants = "verify-invariants";
constexpr const char* kLimitCompare = "limit-compare";
constexpr const char* kAugmented = "augmented";
constexpr const char* kMlOracle = "ml-oracle";
constexpr const char* kTrace = "trace";

/// Maps f over 0..count-1 on `workers` threads; results are stored by index
/// so the output does not depend on scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, std::size_t workers, F&& f) {
    std::vector<T> out(count);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        }
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

template <class Seq>
std::string join(const Seq& seq, char sep) {
    std::string s;
    for (const auto& v : seq) {
        if (!s.empty()) s += sep;
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>)
            s += format_double(v);
        else
            s += std::to_string(v);
    }
    return s;
}

std::string sizes_key(std::vector<std::size_t> sizes) {
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return join(sizes, ':');
}

/// "size:surplus" pairs sorted by decreasing size then surplus, ';'-separated.
std::string augmented_key(std::vector<std::pair<std::size_t, std::uint64_t>> comps) {
    std::sort(comps.begin(), comps.end(), std::greater<>());
    std::string s;
    for (const auto& [size, surplus] : comps) {
        if (!s.empty()) s += ';';
        s += std::to_string(size) + ':' + std::to_string(surplus);
    }
    return s;
}

std::string walk_key(const std::vector<WalkComponent>& cs) {
    std::vector<std::pair<std::size_t, std::uint64_t>> v;
    for (const auto& c : cs) v.emplace_back(c.size(), c.surplus);
    return augmented_key(std::move(v));
}

std::string block_key(const std::vector<Block>& bs) {
    std::vector<std::pair<std::size_t, std::uint64_t>> v;
    for (const auto& b : bs) v.emplace_back(b.size, b.excess());
    return augmented_key(std::move(v));
}

TestVerdict count_verdict(std::string description, std::uint64_t violations, std::size_t cases, std::uint64_t seed) {
    TestVerdict v;
    v.description = std::move(description);
    v.statistic = static_cast<double>(violations);
    v.threshold = 0.0;
    v.passed = violations == 0;
    v.seeds = {seed};
    v.sample_size_a = cases;
    return v;
}

TestVerdict exact_verdict(std::string description, const Rational& got, const Rational& want) {
    TestVerdict v;
    v.description = std::move(description) + " (got " + got.str() + ", expected " + want.str() + ")";
    v.statistic = got.value();
    v.threshold = want.value();
    v.passed = got == want;
    return v;
}

std::string distribution_csv(const std::string& header, const std::string& prefix, const EmpiricalDistribution& a,
                             const EmpiricalDistribution& b) {
    std::set<std::string> keys;
    for (const auto& [k, w] : a.weights()) keys.insert(k);
    for (const auto& [k, w] : b.weights()) keys.insert(k);
    std::string out;
    if (!header.empty()) out += header + '\n';
    for (const auto& k : keys)
        out += prefix + k + ',' + format_double(a.probability(k)) + ',' + format_double(b.probability(k)) + '\n';
    return out;
}

std::vector<double> sorted_grid(std::vector<double> g) {
    std::sort(g.begin(), g.end());
    return g;
}

double horizon_for(const ExperimentConfig& c, double lambda) {
    return c.horizon > 0.0 ? c.horizon : default_parabolic_horizon(lambda);
}

bool is_integer_multiple(double length, double dx) {
    const double steps = std::round(length / dx);
    return steps >= 1.0 && std::abs(steps * dx - length) <= 1e-9 * length;
}

// ---------------------------------------------------------------- kinds

void run_simulate_additive(const ExperimentConfig& c, ExperimentResult& res) {
    const auto grid = sorted_grid(c.lambdas);
    struct Rep {
        std::string rows;
        std::uint64_t mass_violations = 0;
        std::uint64_t nesting_violations = 0;
    };
    const auto reps = parallel_map<Rep>(c.replicates, c.workers, [&](std::size_t r) {
        Rep rep;
        Rng rng = make_rng(c.seed, r);
        const ThinnedWalkFamily fam(sample_conditioned_walk(c.n, rng), rng);
        std::vector<Excursion> coarse;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double t = additive_level(c.n, grid[j]);
            const auto y = fam.walk_at(t);
            const auto ex = excursions_above_min(std::span<const std::int64_t>(y.values));
            const auto masses = sorted_lengths(ex, static_cast<double>(c.n));
            if (std::abs(masses.l1() - 1.0) > 1e-9) ++rep.mass_violations;
            // larger lambda = heavier thinning: every block must sit inside a block of the previous level
            if (j > 0) {
                for (const auto& e : ex.intervals) {
                    const bool inside = std::any_of(coarse.begin(), coarse.end(), [&](const Excursion& f) {
                        return f.begin <= e.begin && e.end <= f.end;
                    });
                    if (!inside) ++rep.nesting_violations;
                }
            }
            coarse = ex.intervals;
            for (std::size_t k = 0; k < std::min(c.top, masses.size()); ++k)
                rep.rows += std::to_string(r) + ',' + format_double(grid[j]) + ',' + std::to_string(k + 1) + ',' +
                            format_double(masses[k]) + '\n';
        }
        return rep;
    });
    std::string csv = "replicate,lambda,rank,mass\n";
    std::uint64_t mass = 0, nest = 0;
    for (const auto& rep : reps) {
        csv += rep.rows;
        mass += rep.mass_violations;
        nest += rep.nesting_violations;
    }
    res.files.push_back({"masses.csv", std::move(csv)});
    res.verdicts.push_back(count_verdict("block-masses: additive block masses sum to 1", mass, c.replicates, c.seed));
    res.verdicts.push_back(
        count_verdict("fragmentation: blocks at larger lambda refine blocks at smaller lambda", nest, c.replicates, c.seed));
}

/// Violations of: sum_{i<=k} gamma_i^2 non-decreasing in lambda, for every k.
std::uint64_t monotone_violations(const std::vector<MassVector>& by_lambda) {
    std::uint64_t bad = 0;
    for (std::size_t j = 1; j < by_lambda.size(); ++j) {
        const auto& a = by_lambda[j - 1];
        const auto& b = by_lambda[j];
        const std::size_t kmax = std::max(a.size(), b.size());
        double sa = 0.0, sb = 0.0;
        for (std::size_t k = 0; k < kmax; ++k) {
            sa += a[k] * a[k];
            sb += b[k] * b[k];
            if (sb < sa * (1.0 - 1e-12)) {
                ++bad;
                break;
            }
        }
    }
    return bad;
}

void run_simulate_multiplicative(const ExperimentConfig& c, ExperimentResult& res) {
    const auto grid = sorted_grid(c.lambdas);
    const bool graph = c.route == "graph";
    struct Rep {
        std::string rows;
        std::uint64_t violations = 0;
    };
    const auto reps = parallel_map<Rep>(c.replicates, c.workers, [&](std::size_t r) {
        Rep rep;
        Rng rng = make_rng(c.seed, r);
        std::vector<AugmentedState> states;
        if (graph) {
            const auto route = graph_route(c.n, grid, rng);
            for (const auto& snap : route.snapshots) states.push_back(augmented_state(c.n, snap.components));
            std::vector<MassVector> masses;
            for (const auto& s : states) masses.push_back(s.masses);
            rep.violations = monotone_violations(masses);
        } else {
            std::optional<UniformField> field;
            if (c.field == "full") field.emplace(c.n, rng);
            for (double lambda : grid) {
                const double t = p_lambda(c.n, lambda);
                try {
                    if (field) {
                        states.push_back(augmented_state(c.n, surplus_field(z_walk(t, *field), *field)));
                    } else {
                        states.push_back(augmented_state(c.n, z_walk_sparse(c.n, t, rng).components));
                    }
                } catch (const InvalidArgument&) {
                    throw;
                } catch (const Error&) {
                    ++rep.violations;
                    states.emplace_back();
                }
            }
        }
        for (std::size_t j = 0; j < grid.size(); ++j)
            for (std::size_t k = 0; k < std::min(c.top, states[j].masses.size()); ++k)
                rep.rows += std::to_string(r) + ',' + format_double(grid[j]) + ',' + std::to_string(k + 1) + ',' +
                            format_double(states[j].masses[k]) + ',' + std::to_string(states[j].surplus(k)) + '\n';
        return rep;
    });
    std::string csv = "replicate,lambda,rank,mass,surplus\n";
    std::uint64_t bad = 0;
    for (const auto& rep : reps) {
        csv += rep.rows;
        bad += rep.violations;
    }
    res.files.push_back({"components.csv", std::move(csv)});
    if (graph)
        res.verdicts.push_back(count_verdict(
            "monotone-coupling: partial sums of squared masses are non-decreasing in lambda", bad, c.replicates, c.seed));
    else
        res.verdicts.push_back(
            count_verdict("z-reflects-y: Z is Y reflected at its running minimum", bad, c.replicates, c.seed));
}

void add_four_node_verdicts(ExperimentResult& res) {
    // root 0 with leaves a1 = 1, a2 = 2, a3 = 3 and the extra edge (a2, a3)
    const std::vector<Edge> g{{0, 1, 0.1}, {0, 2, 0.2}, {0, 3, 0.3}, {2, 3, 0.4}};
    const std::vector<Vertex> target{0, 2, 3, 1};
    res.verdicts.push_back(exact_verdict("prim-visit-probability: Prim exploration visits (1,a2,a3,a1)",
                                         prim_visit_probability(4, g, target), Rational(1, 4)));
    res.verdicts.push_back(exact_verdict("standard-visit-probability: relabelled exploration visits (1,a2,a3,a1)",
                                         standard_visit_probability(4, g, target), Rational(1, 6)));
    const std::vector<Edge> k3{{0, 1, 0.1}, {0, 2, 0.2}, {1, 2, 0.3}};
    res.verdicts.push_back(exact_verdict("triangle-prim-order: Prim order of K3 is (1,2,3)",
                                         prim_visit_probability(3, k3, {0, 1, 2}), Rational(1, 2)));
}

void run_compare_orders(const ExperimentConfig& c, ExperimentResult& res) {
    add_four_node_verdicts(res);
    struct Rep {
        std::string rows;
        std::vector<std::string> prim_keys, standard_keys;
        std::uint64_t violations = 0;
    };
    const auto reps = parallel_map<Rep>(c.replicates, c.workers, [&](std::size_t r) {
        Rep rep;
        Rng rng = make_rng(c.seed, r);
        const auto g = complete_graph(c.n, rng);
        const auto ord = prim_order(g, 0);
        for (double lambda : c.lambdas) {
            const double t = p_lambda(c.n, lambda);
            const auto zp = explore(g, t, ExplorationOrder::prim(ord)).z;
            const auto zs = explore(g, t, ExplorationOrder::labels(c.n)).z;
            auto lp = component_sizes_from_zeros(zp), ls = component_sizes_from_zeros(zs);
            std::sort(lp.begin(), lp.end());
            std::sort(ls.begin(), ls.end());
            if (lp != ls) ++rep.violations;
            rep.prim_keys.push_back(join(zp.values, ':'));
            rep.standard_keys.push_back(join(zs.values, ':'));
            rep.rows += std::to_string(r) + ',' + format_double(lambda) + ",prim," + rep.prim_keys.back() + '\n';
            rep.rows += std::to_string(r) + ',' + format_double(lambda) + ",standard," + rep.standard_keys.back() + '\n';
        }
        return rep;
    });
    std::string csv = "replicate,lambda,order,z\n";
    std::uint64_t bad = 0;
    std::vector<EmpiricalDistribution> prim(c.lambdas.size()), standard(c.lambdas.size());
    for (const auto& rep : reps) {
        csv += rep.rows;
        bad += rep.violations;
        for (std::size_t j = 0; j < c.lambdas.size(); ++j) {
            prim[j].add(rep.prim_keys[j]);
            standard[j].add(rep.standard_keys[j]);
        }
    }
    std::string laws = "lambda,tv_distance,prim_support,standard_support\n";
    for (std::size_t j = 0; j < c.lambdas.size(); ++j)
        laws += format_double(c.lambdas[j]) + ',' + format_double(tv_distance(prim[j], standard[j])) + ',' +
                std::to_string(prim[j].support_size()) + ',' + std::to_string(standard[j].support_size()) + '\n';
    res.files.push_back({"orders.csv", std::move(csv)});
    res.files.push_back({"order_laws.csv", std::move(laws)});
    res.verdicts.push_back(count_verdict("order-invariance: both orders give the same multiset of excursion lengths",
                                         bad, c.replicates, c.seed));
}

struct InvariantCounts {
    std::uint64_t prim_intervals = 0;
    std::uint64_t excursions_components = 0;
    std::uint64_t psi_lemma = 0;
    std::uint64_t z_reflects_y = 0;
    std::uint64_t field_walk = 0;
    std::uint64_t surplus = 0;
    std::uint64_t complete_cases = 0;

    InvariantCounts& operator+=(const InvariantCounts& o) {
        prim_intervals += o.prim_intervals;
        excursions_components += o.excursions_components;
        psi_lemma += o.psi_lemma;
        z_reflects_y += o.z_reflects_y;
        field_walk += o.field_walk;
        surplus += o.surplus;
        complete_cases += o.complete_cases;
        return *this;
    }
};

bool psi_lemma_holds(std::span<const std::int64_t> f) {
    const auto pf = psi(f);
    return excursions_above_min(f, ExcursionConvention::continuum()).intervals ==
           excursions_above_zero(std::span<const std::int64_t>(pf), ExcursionConvention::continuum()).intervals;
}

std::vector<std::size_t> sorted_sizes(const std::vector<Block>& blocks) {
    std::vector<std::size_t> s;
    for (const auto& b : blocks) s.push_back(b.size);
    std::sort(s.begin(), s.end());
    return s;
}

bool exploration_matches(const WeightedGraph& g, const PrimOrdering& ord, double t,
                         const std::vector<std::size_t>& uf_sizes) {
    const std::size_t n = g.vertex_count();
    for (const auto& order : {ExplorationOrder::labels(n), ExplorationOrder::prim(ord)}) {
        const auto ex = explore(g, t, order);
        auto zs = component_sizes_from_zeros(ex.z);
        std::sort(zs.begin(), zs.end());
        auto es = excursions_above_zero(std::span<const std::int64_t>(ex.z.values).first(n + 1)).lengths();
        std::sort(es.begin(), es.end());
        if (zs != uf_sizes || es != uf_sizes) return false;
    }
    return true;
}

InvariantCounts check_case(const ExperimentConfig& c, std::size_t r) {
    InvariantCounts cnt;
    Rng rng = make_rng(c.seed, r);
    const std::size_t n = 2 + r % (c.n - 1);
    const bool complete = r % 2 == 0;
    const auto g = complete ? complete_graph(n, rng) : with_uniform_weights(n, pruefer_tree_edges(n, rng), rng);
    const auto ord = prim_order(g, 0);
    const ComponentFiltration filt(g, ord);
    for (const auto& ev : filt.events())
        if (!ev.adjacent()) {
            ++cnt.prim_intervals;
            break;
        }

    std::vector<double> levels;
    if (complete)
        for (double lambda : c.lambdas) levels.push_back(p_lambda(n, lambda));
    levels.push_back(uniform_open(rng));

    if (!complete) {
        for (double t : levels) {
            const auto blocks = filt.blocks_at(t);
            if (!exploration_matches(g, ord, t, sorted_sizes(blocks))) ++cnt.excursions_components;
            const auto x = prim_out_degrees(g, ord, t);
            const auto y = ConditionedWalk{x}.path();
            if (!psi_lemma_holds(y.values)) ++cnt.psi_lemma;
            // Lukasiewicz coding: blocks of the thinned tree are the excursions of Y above its minimum
            auto ys = excursions_above_min(std::span<const std::int64_t>(y.values)).lengths();
            std::sort(ys.begin(), ys.end());
            if (ys != sorted_sizes(blocks)) ++cnt.excursions_components;
        }
        return cnt;
    }

    cnt.complete_cases = 1;
    const auto field = reorder_field_from_graph(g, ord);
    for (double t : levels) {
        const auto blocks = filt.blocks_at(t);
        if (!exploration_matches(g, ord, t, sorted_sizes(blocks))) ++cnt.excursions_components;
        ZWalk w;
        try {
            w = z_walk(t, field);
        } catch (const InvalidArgument&) {
            throw;
        } catch (const Error&) {
            ++cnt.z_reflects_y;
            continue;
        }
        if (!psi_lemma_holds(w.y.values)) ++cnt.psi_lemma;
        const auto zp = explore(g, t, ExplorationOrder::prim(ord)).z;
        if (!std::equal(w.z.values.begin(), w.z.values.end(), zp.values.begin())) ++cnt.field_walk;
        const auto comps = surplus_field(w, field);
        bool ok = comps.size() == blocks.size();
        for (std::size_t i = 0; ok && i < comps.size(); ++i)
            ok = comps[i].first - 1 == blocks[i].first && comps[i].last - 1 == blocks[i].last &&
                 comps[i].surplus == blocks[i].excess();
        if (!ok) ++cnt.surplus;
    }
    return cnt;
}

void run_verify_invariants(const ExperimentConfig& c, ExperimentResult& res) {
    const auto reps = parallel_map<InvariantCounts>(c.replicates, c.workers,
                                                    [&](std::size_t r) { return check_case(c, r); });
    InvariantCounts total;
    for (const auto& rep : reps) total += rep;
    const std::size_t cases = c.replicates;
    const std::size_t complete = total.complete_cases;
    const std::vector<std::tuple<std::string, std::uint64_t, std::size_t>> rows{
        {"prim-intervals: every filtration merge joins adjacent Prim intervals", total.prim_intervals, cases},
        {"excursions-components: Z-excursion lengths equal union-find sizes in both orders",
         total.excursions_components, cases},
        {"psi-lemma: excursions above the minimum equal zero excursions of Psi", total.psi_lemma, cases},
        {"z-reflects-y: Z is Y reflected at its running minimum", total.z_reflects_y, complete},
        {"field-walk: Z from the reordered field equals the Prim exploration", total.field_walk, complete},
        {"surplus-identity: field surplus equals graph excess per component", total.surplus, complete},
    };
    std::string csv = "check,cases,violations\n";
    for (const auto& [desc, bad, n] : rows) {
        csv += desc.substr(0, desc.find(':')) + ',' + std::to_string(n) + ',' + std::to_string(bad) + '\n';
        res.verdicts.push_back(count_verdict(desc, bad, n, c.seed));
    }
    res.files.push_back({"invariants.csv", std::move(csv)});
}

void run_limit_compare(const ExperimentConfig& c, ExperimentResult& res) {
    const double lambda = c.lambdas.front();
    const bool additive = c.coalescent == "additive";
    struct Rep {
        double discrete = 0.0;
        double limit = 0.0;
    };
    const auto reps = parallel_map<Rep>(c.replicates, c.workers, [&](std::size_t r) {
        Rep rep;
        Rng a = make_rng(c.seed, 2 * r);
        Rng b = make_rng(c.seed, 2 * r + 1);
        if (additive) {
            const ThinnedWalkFamily fam(sample_conditioned_walk(c.n, a), a);
            rep.discrete = gamma_plus(fam, lambda)[0];
            rep.limit = limit_gamma(simulate_excursion(lambda, c.dx, b), 1)[0];
        } else {
            const auto walk = z_walk_sparse(c.n, p_lambda(c.n, lambda), a);
            rep.discrete = gamma_times(c.n, walk.components)[0];
            rep.limit = limit_gamma(simulate_parabolic(lambda, horizon_for(c, lambda), c.dx, b), 1)[0];
        }
        return rep;
    });
    std::vector<double> discrete, limit;
    std::string csv = "replicate,discrete,limit\n";
    for (std::size_t r = 0; r < reps.size(); ++r) {
        discrete.push_back(reps[r].discrete);
        limit.push_back(reps[r].limit);
        csv += std::to_string(r) + ',' + format_double(reps[r].discrete) + ',' + format_double(reps[r].limit) + '\n';
    }
    res.files.push_back({"samples.csv", std::move(csv)});
    auto v = ks_two_sample(discrete, limit, c.alpha,
                           additive ? "largest-block: additive largest block vs largest excursion of Psi(e - lambda x)"
                                    : "largest-component: n^{-2/3} largest component vs largest excursion of "
                                      "Psi(B + lambda x - x^2/2)");
    v.seeds = {c.seed};
    res.verdicts.push_back(std::move(v));
}

void run_augmented(const ExperimentConfig& c, ExperimentResult& res) {
    std::string csv = "lambda,outcome,walk,graph\n";
    for (std::size_t j = 0; j < c.lambdas.size(); ++j) {
        const double lambda = c.lambdas[j];
        const double t = p_lambda(c.n, lambda);
        const std::vector<double> point{lambda};
        struct Rep {
            std::string walk, graph;
        };
        const auto reps = parallel_map<Rep>(c.replicates, c.workers, [&](std::size_t r) {
            Rep rep;
            Rng a = make_rng(c.seed, 2 * (j * c.replicates + r));
            Rng b = make_rng(c.seed, 2 * (j * c.replicates + r) + 1);
            if (c.field == "full") {
                const UniformField f(c.n, a);
                rep.walk = walk_key(surplus_field(z_walk(t, f), f));
            } else {
                rep.walk = walk_key(z_walk_sparse(c.n, t, a).components);
            }
            rep.graph = block_key(graph_route(c.n, point, b).snapshots[0].components);
            return rep;
        });
        EmpiricalDistribution walk, graph;
        for (const auto& rep : reps) {
            walk.add(rep.walk);
            graph.add(rep.graph);
        }
        csv += distribution_csv("", format_double(lambda) + ',', walk, graph);
        auto v = tv_discrete(walk, graph, c.tv_threshold,
                             "walk-vs-graph: law of (sizes, surpluses), walk route vs graph route at lambda=" +
                                 format_double(lambda));
        v.seeds = {c.seed};
        res.verdicts.push_back(std::move(v));
    }
    res.files.push_back({"outcomes.csv", std::move(csv)});
}

void run_ml_oracle(const ExperimentConfig& c, ExperimentResult& res) {
    std::string csv = "kernel,parameter,outcome,marcus_lushnikov,reference\n";
    const std::size_t n = c.n;
    for (std::size_t j = 0; j < c.lambdas.size(); ++j) {
        const double p = p_lambda(n, c.lambdas[j]);
        const std::vector<double> point{p};
        struct Rep {
            std::string ml, graph;
        };
        const auto reps = parallel_map<Rep>(c.replicates, c.workers, [&](std::size_t r) {
            Rep rep;
            Rng a = make_rng(c.seed, 2 * (j * c.replicates + r));
            Rng b = make_rng(c.seed, 2 * (j * c.replicates + r) + 1);
            const auto tr = marcus_lushnikov(std::vector<double>(n, 1.0), Kernel::multiplicative(),
                                             homogeneous_time(p), a);
            std::vector<std::size_t> sizes;
            for (double m : tr.final_masses) sizes.push_back(static_cast<std::size_t>(std::lround(m)));
            rep.ml = sizes_key(sizes);
            std::vector<std::size_t> gs;
            for (const auto& blk : graph_route_p(n, point, b).snapshots[0].components) gs.push_back(blk.size);
            rep.graph = sizes_key(gs);
            return rep;
        });
        EmpiricalDistribution ml, graph;
        for (const auto& rep : reps) {
            ml.add(rep.ml);
            graph.add(rep.graph);
        }
        csv += distribution_csv("", "multiplicative,p=" + format_double(p) + ',', ml, graph);
        auto v = tv_discrete(ml, graph, c.tv_threshold,
                             "ml-multiplicative: Marcus-Lushnikov xy kernel at -ln(1-p) vs G(n,p), p=" +
                                 format_double(p));
        v.seeds = {c.seed};
        res.verdicts.push_back(std::move(v));
    }

    const std::size_t offset = 2 * c.lambdas.size() * c.replicates;
    struct Rep {
        std::string ml, forest;
    };
    const auto reps = parallel_map<Rep>(c.replicates, c.workers, [&](std::size_t r) {
        Rep rep;
        Rng a = make_rng(c.seed, offset + 2 * r);
        Rng b = make_rng(c.seed, offset + 2 * r + 1);
        const auto tr = marcus_lushnikov(std::vector<double>(n, 1.0 / static_cast<double>(n)), Kernel::additive(),
                                         c.time, a);
        std::vector<std::size_t> sizes;
        for (double m : tr.final_masses) sizes.push_back(static_cast<std::size_t>(std::lround(m * static_cast<double>(n))));
        rep.ml = sizes_key(sizes);
        rep.forest = sizes_key(pitman_forest(n, b).sizes_at(c.time));
        return rep;
    });
    EmpiricalDistribution ml, forest;
    for (const auto& rep : reps) {
        ml.add(rep.ml);
        forest.add(rep.forest);
    }
    csv += distribution_csv("", "additive,s=" + format_double(c.time) + ',', ml, forest);
    auto v = tv_discrete(ml, forest, c.tv_threshold,
                         "ml-additive: Marcus-Lushnikov x+y kernel vs Pitman forest at s=" + format_double(c.time));
    v.seeds = {c.seed};
    res.verdicts.push_back(std::move(v));
    res.files.push_back({"outcomes.csv", std::move(csv)});
}

void run_trace(const ExperimentConfig& c, ExperimentResult& res) {
    const bool additive = c.coalescent == "additive";
    std::uint64_t bad = 0;
    for (std::size_t r = 0; r < c.replicates; ++r) {
        Rng rng = make_rng(c.seed, r);
        std::optional<ThinnedWalkFamily> fam;
        std::optional<UniformField> field;
        if (additive) fam.emplace(sample_conditioned_walk(c.n, rng), rng);
        else if (c.field == "full") field.emplace(c.n, rng);
        for (std::size_t j = 0; j < c.lambdas.size(); ++j) {
            const double lambda = c.lambdas[j];
            LatticePath y;
            if (additive) {
                y = y_plus(*fam, lambda);
            } else {
                const double t = p_lambda(c.n, lambda);
                try {
                    y = y_times(field ? z_walk(t, *field) : z_walk_sparse(c.n, t, rng).walk);
                } catch (const InvalidArgument&) {
                    throw;
                } catch (const Error&) {
                    ++bad;
                    continue;
                }
            }
            std::ostringstream os;
            write_trace_csv(os, y, true);
            res.files.push_back({"trace_r" + std::to_string(r) + "_l" + std::to_string(j) + ".csv", os.str()});
        }
    }
    if (!additive)
        res.verdicts.push_back(
            count_verdict("z-reflects-y: Z is Y reflected at its running minimum", bad, c.replicates, c.seed));
}

// ---------------------------------------------------------------- config

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"kind",  "n",     "lambda",     "replicates",   "seed",
                                            "workers", "dx",  "horizon",    "route",        "field",
                                            "coalescent", "alpha", "tv_threshold", "time", "top"};
    return keys;
}

template <class T>
T get_key(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument(std::string("config: key '") + key + "' has the wrong type");
    }
}

std::size_t get_count(const json& j, const char* key) {
    if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
        throw InvalidArgument(std::string("config: key '") + key + "' must be a non-negative integer");
    return j.at(key).get<std::size_t>();
}

void check_multiplicative_grid(std::size_t n, const std::vector<double>& lambdas) {
    for (double l : lambdas) {
        const double nd = static_cast<double>(n);
        const double p = 1.0 / nd + l / std::pow(nd, 4.0 / 3.0);
        require(p >= 0.0 && p <= 1.0, "config: lambda=" + format_double(l) + " gives p_lambda(" + std::to_string(n) +
                                          ") outside [0,1]");
    }
}

} // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds{kSimulateAdditive, kSimulateMultiplicative, kCompareOrders,
                                                kVerifyInvariants, kLimitCompare,           kAugmented,
                                                kMlOracle,         kTrace};
    return kinds;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    require(j.is_object(), "config: expected a JSON object");
    for (const auto& [key, value] : j.items())
        require(known_keys().count(key) == 1, "config: unknown key '" + key + "'");
    ExperimentConfig c;
    require(j.contains("kind"), "config: missing 'kind'");
    c.kind = get_key<std::string>(j, "kind");
    if (j.contains("coalescent")) c.coalescent = get_key<std::string>(j, "coalescent");

    if (j.contains("n")) {
        c.n = get_count(j, "n");
    } else if (c.kind == kCompareOrders) {
        c.n = 8;
    } else if (c.kind == kVerifyInvariants) {
        c.n = 64;
    } else if (c.kind == kLimitCompare) {
        c.n = c.coalescent == "additive" ? 10000 : 50000;
    } else if (c.kind == kAugmented || c.kind == kMlOracle) {
        c.n = 6;
    } else {
        c.n = 1000;
    }
    if (j.contains("replicates")) c.replicates = get_count(j, "replicates");
    else if (c.kind == kTrace) c.replicates = 1;

    if (j.contains("lambda")) {
        const auto& l = j.at("lambda");
        if (l.is_number()) c.lambdas = {l.get<double>()};
        else c.lambdas = get_key<std::vector<double>>(j, "lambda");
    }
    if (j.contains("seed")) {
        require(j.at("seed").is_number_unsigned() || (j.at("seed").is_number_integer() && j.at("seed").get<long long>() >= 0),
                "config: key 'seed' must be a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("workers")) c.workers = get_count(j, "workers");
    if (j.contains("dx")) c.dx = get_key<double>(j, "dx");
    if (j.contains("horizon")) c.horizon = get_key<double>(j, "horizon");
    if (j.contains("route")) c.route = get_key<std::string>(j, "route");
    if (j.contains("field")) c.field = get_key<std::string>(j, "field");
    if (j.contains("alpha")) c.alpha = get_key<double>(j, "alpha");
    if (j.contains("tv_threshold")) c.tv_threshold = get_key<double>(j, "tv_threshold");
    if (j.contains("time")) c.time = get_key<double>(j, "time");
    if (j.contains("top")) c.top = get_count(j, "top");
    return c;
}

json ExperimentConfig::to_json() const {
    return {{"kind", kind},     {"n", n},         {"lambda", lambdas},   {"replicates", replicates},
            {"seed", seed},     {"dx", dx},       {"horizon", horizon},  {"route", route},
            {"field", field},   {"coalescent", coalescent}, {"alpha", alpha}, {"tv_threshold", tv_threshold},
            {"time", time},     {"top", top}};
}

void ExperimentConfig::validate() const {
    const auto& kinds = experiment_kinds();
    require(std::find(kinds.begin(), kinds.end(), kind) != kinds.end(), "config: unknown kind '" + kind + "'");
    require(n >= 1, "config: n must be >= 1");
    require(replicates >= 1, "config: replicates must be >= 1");
    require(!lambdas.empty(), "config: lambda grid is empty");
    for (double l : lambdas) require(std::isfinite(l), "config: lambda values must be finite");
    require(route == "walk" || route == "graph", "config: route must be 'walk' or 'graph'");
    require(field == "full" || field == "sparse", "config: field must be 'full' or 'sparse'");
    require(coalescent == "multiplicative" || coalescent == "additive",
            "config: coalescent must be 'multiplicative' or 'additive'");
    require(alpha > 0.0 && alpha < 1.0, "config: alpha must lie in (0,1)");
    require(tv_threshold > 0.0 && tv_threshold <= 1.0, "config: tv_threshold must lie in (0,1]");
    require(top >= 1, "config: top must be >= 1");
    require(std::isfinite(dx) && dx > 0.0, "config: dx must be positive");
    require(std::isfinite(horizon) && horizon >= 0.0, "config: horizon must be >= 0");

    const bool walk_field = field == "full" && (kind == kSimulateMultiplicative || kind == kAugmented ||
                                                (kind == kTrace && coalescent == "multiplicative"));
    if (walk_field && !(kind == kSimulateMultiplicative && route == "graph"))
        require(n <= 4096, "config: field=full requires n <= 4096 (use field=sparse)");

    const bool additive_kind =
        kind == kSimulateAdditive || ((kind == kLimitCompare || kind == kTrace) && coalescent == "additive");
    if (additive_kind) {
        const double root = std::sqrt(static_cast<double>(n));
        for (double l : lambdas)
            require(l >= 0.0 && l <= root, "config: additive lambda must lie in [0, sqrt(n)] (got " + format_double(l) + ")");
    } else if (kind != kVerifyInvariants) {
        check_multiplicative_grid(n, lambdas);
    }

    if (kind == kVerifyInvariants) {
        require(n >= 2 && n <= 512, "config: verify-invariants needs 2 <= n <= 512");
        for (std::size_t m = 2; m <= n; ++m) check_multiplicative_grid(m, lambdas);
    }
    if (kind == kCompareOrders) require(n >= 2 && n <= 64, "config: compare-orders needs 2 <= n <= 64");
    if (kind == kMlOracle) {
        require(n >= 2 && n <= 64, "config: ml-oracle needs 2 <= n <= 64");
        require(std::isfinite(time) && time > 0.0, "config: time must be positive");
        for (double l : lambdas) require(p_lambda(n, l) < 1.0, "config: ml-oracle needs p_lambda < 1");
    }
    if (kind == kLimitCompare) {
        require(lambdas.size() == 1, "config: limit-compare takes a single lambda");
        if (coalescent == "additive") {
            require(is_integer_multiple(1.0, dx), "config: additive limit-compare needs 1/dx to be an integer");
        } else {
            require(is_integer_multiple(horizon_for(*this, lambdas.front()), dx),
                    "config: horizon must be a positive multiple of dx");
        }
    }
    if (kind == kTrace) require(replicates <= 100, "config: trace writes one file per replicate and lambda; use <= 100");
}

ExperimentConfig resolve_config(const json& base, const json& overrides) {
    json merged = base.is_null() ? json::object() : base;
    require(merged.is_object(), "config: expected a JSON object");
    if (!overrides.is_null()) {
        require(overrides.is_object(), "config: overrides must be a JSON object");
        for (const auto& [k, v] : overrides.items()) merged[k] = v;
    }
    auto c = ExperimentConfig::from_json(merged);
    c.validate();
    return c;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return out;
}

bool ExperimentResult::passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const TestVerdict& v) { return v.passed; });
}

json ExperimentResult::manifest() const {
    const json cfg = config.to_json();
    json files_json = json::array();
    for (const auto& f : files) files_json.push_back({{"name", f.name}, {"fnv1a", fnv1a_hex(f.content)}});
    json verdicts_json = json::array();
    for (const auto& v : verdicts) verdicts_json.push_back(v.to_json());
    return {{"tool", "primcoal"},     {"version", kVersion}, {"config", cfg},
            {"config_hash", fnv1a_hex(cfg.dump())}, {"seed", config.seed}, {"files", files_json},
            {"verdicts", verdicts_json}, {"passed", passed()}};
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult res;
    res.config = config;
    const auto& k = config.kind;
    if (k == kSimulateAdditive) run_simulate_additive(config, res);
    else if (k == kSimulateMultiplicative) run_simulate_multiplicative(config, res);
    else if (k == kCompareOrders) run_compare_orders(config, res);
    else if (k == kVerifyInvariants) run_verify_invariants(config, res);
    else if (k == kLimitCompare) run_limit_compare(config, res);
    else if (k == kAugmented) run_augmented(config, res);
    else if (k == kMlOracle) run_ml_oracle(config, res);
    else run_trace(config, res);
    return res;
}

void write_outputs(const ExperimentResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
    auto put = [&](const std::string& name, const std::string& content) {
        std::ofstream os(fs::path(dir) / name, std::ios::binary);
        if (!os) throw Error("cannot write '" + (fs::path(dir) / name).string() + "'");
        os << content;
    };
    for (const auto& f : result.files) put(f.name, f.content);
    put("manifest.json", result.manifest().dump(2) + "\n");
}

} // namespace primcoal
