#include "primcoal/primcoal.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "primcoal/additive.hpp"
#include "primcoal/experiment.hpp"
#include "primcoal/exploration.hpp"
#include "primcoal/graph.hpp"
#include "primcoal/multiplicative.hpp"
#include "primcoal/prim.hpp"

struct pc_experiment {
    primcoal::ExperimentConfig config;
    std::optional<primcoal::ExperimentResult> result;
    std::string summary;
};

struct pc_graph {
    primcoal::WeightedGraph graph;
};

namespace {

thread_local std::string last_error;

pc_status fail(pc_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
pc_status guarded(F&& f) {
    try {
        last_error.clear();
        f();
        return PC_OK;
    } catch (const primcoal::InvalidArgument& e) {
        return fail(PC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(PC_ERR_INVALID_ARGUMENT, std::string("config: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(PC_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(PC_ERR_RUNTIME, e.what());
    }
}

} // namespace

extern "C" {

const char* pc_version(void) { return primcoal::kVersion; }

const char* pc_status_string(pc_status status) {
    switch (status) {
    case PC_OK: return "ok";
    case PC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PC_ERR_IO: return "i/o error";
    case PC_ERR_RUNTIME: return "runtime error";
    case PC_ERR_NULL: return "null pointer";
    }
    return "unknown status";
}

const char* pc_last_error(void) { return last_error.c_str(); }

size_t pc_experiment_kind_count(void) { return primcoal::experiment_kinds().size(); }

const char* pc_experiment_kind(size_t index) {
    const auto& k = primcoal::experiment_kinds();
    return index < k.size() ? k[index].c_str() : nullptr;
}

pc_status pc_experiment_create(const char* config_json, const char* overrides_json, pc_experiment** out) {
    if (!config_json || !out) return fail(PC_ERR_NULL, "pc_experiment_create: null argument");
    *out = nullptr;
    return guarded([&] {
        const auto base = nlohmann::json::parse(config_json);
        const auto over = overrides_json ? nlohmann::json::parse(overrides_json) : nlohmann::json();
        auto exp = std::make_unique<pc_experiment>();
        exp->config = primcoal::resolve_config(base, over);
        *out = exp.release();
    });
}

pc_status pc_experiment_run(pc_experiment* exp, const char* out_dir) {
    if (!exp) return fail(PC_ERR_NULL, "pc_experiment_run: null handle");
    const pc_status s = guarded([&] { exp->result = primcoal::run_experiment(exp->config); });
    if (s != PC_OK || !out_dir) return s;
    try {
        primcoal::write_outputs(*exp->result, out_dir);
    } catch (const std::exception& e) {
        return fail(PC_ERR_IO, e.what());
    }
    return PC_OK;
}

int pc_experiment_passed(const pc_experiment* exp) { return exp && exp->result && exp->result->passed() ? 1 : 0; }

const char* pc_experiment_summary_json(pc_experiment* exp) {
    if (!exp) return nullptr;
    exp->summary = exp->result ? exp->result->manifest().dump(2) : exp->config.to_json().dump(2);
    return exp->summary.c_str();
}

void pc_experiment_destroy(pc_experiment* exp) { delete exp; }

pc_status pc_graph_create(size_t n, const uint32_t* us, const uint32_t* vs, const double* ws, size_t m,
                          pc_graph** out) {
    if (!out || (m > 0 && (!us || !vs || !ws))) return fail(PC_ERR_NULL, "pc_graph_create: null argument");
    *out = nullptr;
    return guarded([&] {
        std::vector<primcoal::Edge> edges(m);
        for (size_t i = 0; i < m; ++i) edges[i] = {us[i], vs[i], ws[i]};
        *out = new pc_graph{primcoal::WeightedGraph(n, std::move(edges))};
    });
}

pc_status pc_graph_complete(size_t n, uint64_t seed, pc_graph** out) {
    if (!out) return fail(PC_ERR_NULL, "pc_graph_complete: null argument");
    *out = nullptr;
    return guarded([&] {
        auto rng = primcoal::make_rng(seed, 0);
        *out = new pc_graph{primcoal::complete_graph(n, rng)};
    });
}

pc_status pc_graph_read(const char* path, pc_graph** out) {
    if (!path || !out) return fail(PC_ERR_NULL, "pc_graph_read: null argument");
    *out = nullptr;
    const pc_status s = guarded([&] { *out = new pc_graph{primcoal::read_graph_file(path)}; });
    return s == PC_ERR_RUNTIME ? PC_ERR_IO : s;
}

pc_status pc_graph_write(const pc_graph* g, const char* path) {
    if (!g || !path) return fail(PC_ERR_NULL, "pc_graph_write: null argument");
    const pc_status s = guarded([&] { primcoal::write_graph_file(path, g->graph); });
    return s == PC_ERR_RUNTIME ? PC_ERR_IO : s;
}

size_t pc_graph_vertex_count(const pc_graph* g) { return g ? g->graph.vertex_count() : 0; }
size_t pc_graph_edge_count(const pc_graph* g) { return g ? g->graph.edge_count() : 0; }

pc_status pc_graph_prim_order(const pc_graph* g, uint32_t root, uint32_t* order_out) {
    if (!g || !order_out) return fail(PC_ERR_NULL, "pc_graph_prim_order: null argument");
    return guarded([&] {
        const auto ord = primcoal::prim_order(g->graph, root);
        for (size_t i = 0; i < ord.size(); ++i) order_out[i] = ord.order[i];
    });
}

pc_status pc_graph_level_components(const pc_graph* g, double t, uint32_t* component_out, size_t* count_out) {
    if (!g || !component_out) return fail(PC_ERR_NULL, "pc_graph_level_components: null argument");
    return guarded([&] {
        const auto p = primcoal::level_components(g->graph, t);
        for (size_t v = 0; v < p.component_of.size(); ++v) component_out[v] = static_cast<uint32_t>(p.component_of[v]);
        if (count_out) *count_out = p.count();
    });
}

pc_status pc_graph_explore(const pc_graph* g, double t, int prim, int64_t* z_out) {
    if (!g || !z_out) return fail(PC_ERR_NULL, "pc_graph_explore: null argument");
    return guarded([&] {
        const auto n = g->graph.vertex_count();
        const auto order = prim ? primcoal::ExplorationOrder::prim(primcoal::prim_order(g->graph, 0))
                                : primcoal::ExplorationOrder::labels(n);
        const auto ex = primcoal::explore(g->graph, t, order);
        for (size_t k = 0; k < ex.z.size(); ++k) z_out[k] = ex.z[k];
    });
}

void pc_graph_destroy(pc_graph* g) { delete g; }

pc_status pc_sample_conditioned_walk(size_t n, uint64_t seed, uint32_t* increments_out) {
    if (!increments_out) return fail(PC_ERR_NULL, "pc_sample_conditioned_walk: null argument");
    return guarded([&] {
        auto rng = primcoal::make_rng(seed, 0);
        const auto w = primcoal::sample_conditioned_walk(n, rng);
        for (size_t i = 0; i < n; ++i) increments_out[i] = w.increments[i];
    });
}

pc_status pc_p_lambda(size_t n, double lambda, double* out) {
    if (!out) return fail(PC_ERR_NULL, "pc_p_lambda: null argument");
    return guarded([&] { *out = primcoal::p_lambda(n, lambda); });
}

} // extern "C"
