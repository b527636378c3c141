#ifndef RIGRAPH_H
#define RIGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Model selector for `rig_threshold_p`.
 */
typedef enum {
  RIG_MODEL_GNP = 0,
  RIG_MODEL_RIG = 1,
} RigModel;

/**
 * Property selector for `rig_threshold_p`.
 */
typedef enum {
  RIG_PROPERTY_CONNECTIVITY = 0,
  RIG_PROPERTY_K_CONNECTIVITY = 1,
  RIG_PROPERTY_PERFECT_MATCHING = 2,
  RIG_PROPERTY_HAMILTON = 3,
  RIG_PROPERTY_MIN_DEGREE_K = 4,
} RigProperty;

/**
 * Status code of every fallible C-ABI call.
 */
typedef enum {
  RIG_STATUS_OK = 0,
  /**
   * A parameter violated a precondition.
   */
  RIG_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Text input could not be parsed.
   */
  RIG_STATUS_PARSE = 2,
  /**
   * A required pointer was null.
   */
  RIG_STATUS_NULL_POINTER = 3,
  /**
   * Internal failure (a panic was caught at the boundary).
   */
  RIG_STATUS_INTERNAL = 4,
} RigStatus;

/**
 * Tri-state verdict of the Hamilton solver.
 */
typedef enum {
  RIG_NO = 0,
  RIG_YES = 1,
  RIG_UNRESOLVED = 2,
} RigTernary;

/**
 * Opaque graph handle.
 */
typedef struct RigGraph RigGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *rig_status_message(RigStatus status);

/**
 * Sample G(n, p_hat).
 */
RigStatus rig_gen_gnp(uintptr_t n,
                      double p_hat,
                      uint64_t seed_root,
                      uint64_t seed_stream,
                      RigGraph **out);

/**
 * Sample the random intersection graph G(n, m, p).
 */
RigStatus rig_gen_rig(uintptr_t n,
                      uint64_t m,
                      double p,
                      uint64_t seed_root,
                      uint64_t seed_stream,
                      RigGraph **out);

/**
 * Parse the edge-list text format ("n <n>" header, one "u v" line per edge).
 */
RigStatus rig_graph_from_edge_list(const char *text, RigGraph **out);

/**
 * Render the edge-list text format; release with `rig_string_free`.
 */
RigStatus rig_graph_to_edge_list(const RigGraph *graph, char **out);

/**
 * Release a graph handle. Null is a no-op.
 */
void rig_graph_free(RigGraph *graph);

/**
 * Release a string returned by this library. Null is a no-op.
 */
void rig_string_free(char *s);

/**
 * Number of vertices; 0 for null.
 */
uintptr_t rig_graph_n(const RigGraph *graph);

/**
 * Number of edges; 0 for null.
 */
uintptr_t rig_graph_edge_count(const RigGraph *graph);

/**
 * Minimum degree; 0 for null.
 */
uintptr_t rig_graph_min_degree(const RigGraph *graph);

RigStatus rig_graph_has_edge(const RigGraph *graph, uint32_t u, uint32_t v, bool *out);

RigStatus rig_is_connected(const RigGraph *graph, bool *out);

RigStatus rig_is_k_connected(const RigGraph *graph, uintptr_t k, bool *out);

RigStatus rig_has_perfect_matching(const RigGraph *graph, bool *out);

/**
 * Decide Hamiltonicity within the default search budget.
 */
RigStatus rig_hamilton(const RigGraph *graph, RigTernary *out);

/**
 * Evaluate the sharp-threshold formula. For the intersection-graph model,
 * `m` is the feature count; for G(n, p_hat) it is ignored.
 */
RigStatus rig_threshold_p(RigModel model,
                          RigProperty property,
                          uintptr_t n,
                          uint64_t m,
                          uintptr_t k,
                          double omega,
                          double *out);

/**
 * The lower coupling probability p_hat_minus; `clamped` reports whether the
 * raw formula went negative and was clamped to 0. Pass omega_c <= 0 for the
 * default divergence parameter.
 */
RigStatus rig_phat_minus(uintptr_t n,
                         uint64_t m,
                         double p,
                         double omega_c,
                         double *out,
                         bool *clamped);

/**
 * Chernoff bound 2 exp(-3 t^2 / (2 (3 mean + t))).
 */
RigStatus rig_chernoff_bound(double mean, double t, double *out);

/**
 * Total-variation bound 2 p_hat of the auxiliary-multigraph approximation.
 */
double rig_tv_bound(double p_hat);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIGRAPH_H */
