/* Compiled as C to check that the public header is C-clean. */
#include <stdio.h>
#include <string.h>

#include "primcoal/primcoal.h"

int main(void) {
    pc_graph* g = NULL;
    const uint32_t us[] = {0, 1};
    const uint32_t vs[] = {1, 2};
    const double ws[] = {0.9, 0.1};
    uint32_t order[3];
    pc_experiment* exp = NULL;
    int ok;

    if (pc_graph_create(3, us, vs, ws, 2, &g) != PC_OK) return 1;
    if (pc_graph_prim_order(g, 0, order) != PC_OK) return 1;
    pc_graph_destroy(g);
    if (order[0] != 0 || order[1] != 1 || order[2] != 2) return 1;

    if (pc_experiment_create("{\"kind\":\"verify-invariants\",\"replicates\":50}", NULL, &exp) != PC_OK) {
        fprintf(stderr, "%s\n", pc_last_error());
        return 1;
    }
    if (pc_experiment_run(exp, NULL) != PC_OK) return 1;
    ok = pc_experiment_passed(exp);
    pc_experiment_destroy(exp);
    if (!ok) return 1;

    if (pc_experiment_create("{\"kind\":\"trace\",\"n\":0}", NULL, &exp) != PC_ERR_INVALID_ARGUMENT) return 1;
    if (strlen(pc_last_error()) == 0) return 1;
    printf("primcoal %s ok\n", pc_version());
    return 0;
}
