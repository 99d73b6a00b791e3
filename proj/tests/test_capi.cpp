#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <json.hpp>

#include "primcoal/primcoal.h"

using nlohmann::json;

TEST_CASE("c api") {
    CHECK(std::string(pc_version()) == "0.1.0");
    CHECK(pc_experiment_kind_count() == 8);
    CHECK(std::string(pc_experiment_kind(0)) == "simulate-additive");
    CHECK(pc_experiment_kind(100) == nullptr);

    pc_experiment* exp = nullptr;
    CHECK(pc_experiment_create("{\"kind\":\"nope\"}", nullptr, &exp) == PC_ERR_INVALID_ARGUMENT);
    CHECK(exp == nullptr);
    CHECK(std::string(pc_last_error()).find("unknown kind") != std::string::npos);
    CHECK(pc_experiment_create("{not json", nullptr, &exp) == PC_ERR_INVALID_ARGUMENT);
    CHECK(pc_experiment_create(nullptr, nullptr, &exp) == PC_ERR_NULL);

    REQUIRE(pc_experiment_create("{\"kind\":\"compare-orders\"}", "{\"replicates\":20}", &exp) == PC_OK);
    CHECK(pc_experiment_passed(exp) == 0);
    CHECK(json::parse(pc_experiment_summary_json(exp))["replicates"] == 20);
    REQUIRE(pc_experiment_run(exp, nullptr) == PC_OK);
    CHECK(pc_experiment_passed(exp) == 1);
    CHECK(json::parse(pc_experiment_summary_json(exp))["verdicts"].size() == 4);
    pc_experiment_destroy(exp);

    const uint32_t us[] = {0, 0, 1}, vs[] = {1, 2, 2};
    const double ws[] = {0.2, 0.5, 0.3};
    pc_graph* g = nullptr;
    REQUIRE(pc_graph_create(3, us, vs, ws, 3, &g) == PC_OK);
    uint32_t order[3];
    REQUIRE(pc_graph_prim_order(g, 0, order) == PC_OK);
    CHECK(order[1] == 1);
    CHECK(order[2] == 2);
    uint32_t comp[3];
    size_t count = 0;
    REQUIRE(pc_graph_level_components(g, 0.25, comp, &count) == PC_OK);
    CHECK(count == 2);
    int64_t z[5];
    REQUIRE(pc_graph_explore(g, 0.25, 1, z) == PC_OK);
    CHECK(z[1] == 1);
    CHECK(z[2] == 0);
    CHECK(pc_graph_prim_order(g, 9, order) == PC_ERR_INVALID_ARGUMENT);
    pc_graph_destroy(g);

    const double dup[] = {0.5, 0.5, 0.3};
    CHECK(pc_graph_create(3, us, vs, dup, 3, &g) == PC_ERR_INVALID_ARGUMENT);
    CHECK(pc_graph_read("/nonexistent/graph.txt", &g) != PC_OK);

    uint32_t x[5];
    REQUIRE(pc_sample_conditioned_walk(5, 1, x) == PC_OK);
    uint32_t sum = 0;
    for (auto v : x) sum += v;
    CHECK(sum == 4);
    double p = 0;
    REQUIRE(pc_p_lambda(8, 2.0, &p) == PC_OK);
    CHECK(p == doctest::Approx(0.25));
    CHECK(pc_p_lambda(8, -100.0, &p) == PC_ERR_INVALID_ARGUMENT);
}
