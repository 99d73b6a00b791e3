#ifndef PRIMCOAL_H
#define PRIMCOAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PC_API __declspec(dllexport)
#else
#define PC_API __attribute__((visibility("default")))
#endif

typedef enum pc_status {
    PC_OK = 0,
    PC_ERR_INVALID_ARGUMENT = 1, /* precondition or config violation */
    PC_ERR_IO = 2,
    PC_ERR_RUNTIME = 3, /* internal invariant failure */
    PC_ERR_NULL = 4     /* required pointer was NULL */
} pc_status;

typedef struct pc_experiment pc_experiment;
typedef struct pc_graph pc_graph;

PC_API const char* pc_version(void);
PC_API const char* pc_status_string(pc_status status);
/* Message of the last failing call on this thread ("" if none). */
PC_API const char* pc_last_error(void);

/* Number of experiment kinds and the i-th kind name. */
PC_API size_t pc_experiment_kind_count(void);
PC_API const char* pc_experiment_kind(size_t index);

/* config_json: JSON object; overrides_json: JSON object or NULL. The config is
 * validated here, before any sampling. */
PC_API pc_status pc_experiment_create(const char* config_json, const char* overrides_json, pc_experiment** out);
/* Runs the experiment; writes data files and manifest.json into out_dir when
 * out_dir is non-NULL. */
PC_API pc_status pc_experiment_run(pc_experiment* exp, const char* out_dir);
/* 1 if every verdict passed, 0 otherwise or if not yet run. */
PC_API int pc_experiment_passed(const pc_experiment* exp);
/* Resolved config (before run) or manifest (after run) as JSON. Owned by the
 * handle; valid until the next call on it. */
PC_API const char* pc_experiment_summary_json(pc_experiment* exp);
PC_API void pc_experiment_destroy(pc_experiment* exp);

/* Graph on vertices 0..n-1 with m edges (us[i], vs[i], ws[i]); weights must be
 * distinct and lie in (0,1]. */
PC_API pc_status pc_graph_create(size_t n, const uint32_t* us, const uint32_t* vs, const double* ws, size_t m,
                                 pc_graph** out);
PC_API pc_status pc_graph_complete(size_t n, uint64_t seed, pc_graph** out);
PC_API pc_status pc_graph_read(const char* path, pc_graph** out);
PC_API pc_status pc_graph_write(const pc_graph* g, const char* path);
PC_API size_t pc_graph_vertex_count(const pc_graph* g);
PC_API size_t pc_graph_edge_count(const pc_graph* g);
/* order_out: n entries, the vertex of each Prim rank. */
PC_API pc_status pc_graph_prim_order(const pc_graph* g, uint32_t root, uint32_t* order_out);
/* component_out: n entries; components numbered by smallest vertex. */
PC_API pc_status pc_graph_level_components(const pc_graph* g, double t, uint32_t* component_out, size_t* count_out);
/* z_out: n + 2 entries Z(0..n+1). prim != 0 explores in Prim order from
 * vertex 0, otherwise by vertex label. */
PC_API pc_status pc_graph_explore(const pc_graph* g, double t, int prim, int64_t* z_out);
PC_API void pc_graph_destroy(pc_graph* g);

/* n increments of a Poisson(1) walk conditioned to first hit -1 at n. */
PC_API pc_status pc_sample_conditioned_walk(size_t n, uint64_t seed, uint32_t* increments_out);
PC_API pc_status pc_p_lambda(size_t n, double lambda, double* out);

#ifdef __cplusplus
}
#endif

#endif
