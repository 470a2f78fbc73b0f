#ifndef RELCENT_H
#define RELCENT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * `Classic` ignores relevance.
 */
typedef enum RcFunction {
  RC_FUNCTION_CLASSIC = 0,
  RC_FUNCTION_PRODUCT = 1,
  RC_FUNCTION_MEAN = 2,
  RC_FUNCTION_SOURCE = 3,
  RC_FUNCTION_MAX = 4,
  RC_FUNCTION_PATH_SUM = 5,
  RC_FUNCTION_PATH_PRODUCT = 6,
} RcFunction;

typedef enum RcMetric {
  RC_METRIC_DEGREE = 0,
  RC_METRIC_HARMONIC = 1,
  RC_METRIC_BETWEENNESS = 2,
  RC_METRIC_EDGE_BETWEENNESS = 3,
} RcMetric;

typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_NULL_POINTER = 1,
  RC_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed graph, relevance, function or parameter.
   */
  RC_STATUS_INVALID_INPUT = 3,
  /**
   * Computation failed (path explosion, overflow, non-finite result).
   */
  RC_STATUS_COMPUTATION = 4,
  /**
   * Output buffer length does not match the element count.
   */
  RC_STATUS_BUFFER_SIZE = 5,
  RC_STATUS_PANIC = 6,
} RcStatus;

/**
 * Opaque graph handle.
 */
typedef struct RcGraph RcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next `rc_*` call on the same thread.
 */
const char *rc_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rc_version(void);

/**
 * Builds a graph from `n_edges` label pairs. `weights` may be NULL for an
 * unweighted graph.
 *
 * # Safety
 * `sources` and `targets` point to `n_edges` NUL-terminated strings;
 * `weights`, when non-NULL, to `n_edges` doubles; `out` is writable.
 */
enum RcStatus rc_graph_from_edges(const char *const *sources,
                                  const char *const *targets,
                                  const double *weights,
                                  size_t n_edges,
                                  struct RcGraph **out);

/**
 * Loads an edge CSV (`source,target[,weight]`).
 *
 * # Safety
 * `path` is a NUL-terminated string; `out` is writable.
 */
enum RcStatus rc_graph_load_csv(const char *path, struct RcGraph **out);

/**
 * # Safety
 * `g` is NULL or a handle from this library that has not been freed.
 */
void rc_graph_free(struct RcGraph *g);

/**
 * # Safety
 * `g` is a live handle or NULL (yields 0).
 */
size_t rc_graph_vertex_count(const struct RcGraph *g);

/**
 * # Safety
 * `g` is a live handle or NULL (yields 0).
 */
size_t rc_graph_edge_count(const struct RcGraph *g);

/**
 * Label of vertex `v`, or NULL when out of range. Owned by the handle.
 *
 * # Safety
 * `g` is a live handle or NULL.
 */
const char *rc_graph_vertex_label(const struct RcGraph *g, size_t v);

/**
 * Endpoints of edge `e` as vertex indices.
 *
 * # Safety
 * `g` is a live handle; `u` and `v` are writable.
 */
enum RcStatus rc_graph_edge_endpoints(const struct RcGraph *g, size_t e, size_t *u, size_t *v);

/**
 * Computes `metric` into `out`, which must hold one value per vertex (one
 * per edge for `EdgeBetweenness`, in `rc_graph_edge_endpoints` order).
 * `relevance` may be NULL for unit relevance. `workers` = 0 uses the
 * default thread count.
 *
 * # Safety
 * `g` is a live handle; `relevance`, when non-NULL, points to
 * `relevance_len` doubles; `out` points to `out_len` writable doubles.
 */
enum RcStatus rc_compute(const struct RcGraph *g,
                         enum RcMetric metric,
                         enum RcFunction function,
                         const double *relevance,
                         size_t relevance_len,
                         size_t workers,
                         double *out,
                         size_t out_len);

/**
 * Like `rc_compute` with a user-supplied pair matrix: `matrix` is row-major
 * `n × n` with `matrix[s*n + t]` weighting pair (s, t) and a zero diagonal.
 *
 * # Safety
 * `g` is a live handle; `matrix` points to `n*n` doubles where `n` is the
 * vertex count; `out` points to `out_len` writable doubles.
 */
enum RcStatus rc_compute_matrix(const struct RcGraph *g,
                                enum RcMetric metric,
                                const double *matrix,
                                size_t workers,
                                double *out,
                                size_t out_len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RELCENT_H */
