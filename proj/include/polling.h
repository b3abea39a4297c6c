/* C interface to the polling-system analysis library.
 *
 * All functions return 0 on success or a nonzero error code (see the
 * PLG_E* constants); on error a message is written to the caller's buffer
 * when one is supplied. Models are opaque, immutable handles; every
 * analysis function is safe to call concurrently on the same handle.
 * Queue indices in this interface are 0-based; w and z are real transform
 * arguments (w >= 0, z components in [0, 1]).
 */
#ifndef POLLING_H
#define POLLING_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct plg_model plg_model;

enum {
    PLG_OK = 0,
    PLG_EINVAL = 2,    /* invalid configuration or argument */
    PLG_EUNSTABLE = 3, /* total load at or above 1 */
    PLG_ENUMERIC = 4,  /* iteration cap reached */
};

enum {
    PLG_EXHAUSTIVE = 0,
    PLG_LOCALLY_GATED = 1,
    PLG_GLOBALLY_GATED = 2,
};

/* Build a model from a JSON config document (schema in the README). */
int plg_model_from_json(const char* json_text, plg_model** out, char* err, size_t errlen);

/* Built-in models: "sym2" (a = customer arrival rate, b = service mean,
 * s = switch-over mean), "model_a" / "model_b" / "model_c" (a = total
 * load; b, s ignored), "vacation1" (all ignored). */
int plg_model_builtin(const char* id, double a, double b, double s, plg_model** out,
                      char* err, size_t errlen);

void plg_model_free(plg_model* m);

int plg_model_queues(const plg_model* m, int* n);
int plg_model_load(const plg_model* m, double* per_queue /* n entries, may be NULL */,
                   double* total);
int plg_model_mean_cycle(const plg_model* m, double* mean_cycle);

int plg_support_size(const plg_model* m, int* count);
int plg_support_entry(const plg_model* m, int index, int* k /* n entries */, double* p);

/* Mean analysis. wait/qlen receive n entries (either may be NULL);
 * mean_T receives the mean sojourn time of an arbitrary batch. */
int plg_solve(const plg_model* m, int discipline, double* wait, double* qlen,
              double* mean_T, char* err, size_t errlen);

/* Mean sojourn time of a specific batch vector k (n entries, not all 0). */
int plg_mean_batch_sojourn(const plg_model* m, int discipline, const int* k, double* out,
                           char* err, size_t errlen);

/* Pointwise transforms. */
int plg_sojourn_lst(const plg_model* m, int discipline, double w, double* out,
                    char* err, size_t errlen);
int plg_sojourn_lst_batch(const plg_model* m, int discipline, const int* k, double w,
                          double* out, char* err, size_t errlen);
int plg_cycle_lst(const plg_model* m, double w, double* out, char* err, size_t errlen);
int plg_queue_pgf(const plg_model* m, const double* z /* n entries */, double* out,
                  char* err, size_t errlen);

/* Simulation. Output layout, all doubles, in order:
 *   [0] mean T, [1] half-width,
 *   [2] mean C, [3] half-width,
 *   then per queue i = 0..n-1: mean W_i, half, mean L_i (waiting), half,
 *   then per omega: empirical E[e^{-w T}], half.
 * out must hold 4 + 4n + 2*n_omega doubles. */
int plg_simulate(const plg_model* m, int discipline, int replications, long batches,
                 double warmup_fraction, uint64_t seed, const double* omegas, int n_omega,
                 double* out, char* err, size_t errlen);

#ifdef __cplusplus
}
#endif

#endif /* POLLING_H */
