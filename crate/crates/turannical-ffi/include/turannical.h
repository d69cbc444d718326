#ifndef TURANNICAL_H
#define TURANNICAL_H

/* This header is generated by cbindgen from turannical-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum {
  TRN_STATUS_OK = 0,
  TRN_STATUS_NULL_ARGUMENT = 1,
  TRN_STATUS_INVALID_ARGUMENT = 2,
  TRN_STATUS_PARSE_ERROR = 3,
  TRN_STATUS_OVERFLOW = 4,
  TRN_STATUS_UTF8_ERROR = 5,
  TRN_STATUS_PANIC = 6,
} TrnStatus;

/**
 * Tri-state decision outcome.
 */
typedef enum {
  TRN_VERDICT_HOLDS = 0,
  TRN_VERDICT_FAILS = 1,
  TRN_VERDICT_UNKNOWN = 2,
} TrnVerdict;

/**
 * Opaque graph handle.
 */
typedef struct TrnGraph TrnGraph;

/**
 * Opaque hypergraph handle.
 */
typedef struct TrnHypergraph TrnHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. Never null;
 * empty before any failure.
 */
const char *trn_last_error_message(void);

/**
 * Frees a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must have been returned by a `trn_*` function and not yet freed.
 */
void trn_string_free(char *s);

/**
 * Parses a graph from JSON `{"n": int, "edges": [[u,v],...]}`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns a graph to be freed with
 * [`trn_graph_free`].
 */
TrnStatus trn_graph_from_json(const char *json, TrnGraph **out);

/**
 * Frees a graph handle. Null is a no-op.
 *
 * # Safety
 * `g` must come from this library and not be freed twice.
 */
void trn_graph_free(TrnGraph *g);

/**
 * Serializes a graph to JSON; free the result with [`trn_string_free`].
 *
 * # Safety
 * `g` must be a live graph handle.
 */
char *trn_graph_to_json(const TrnGraph *g);

/**
 * Vertex count of a graph handle.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be valid.
 */
TrnStatus trn_graph_n(const TrnGraph *g, size_t *out);

/**
 * Edge count of a graph handle.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be valid.
 */
TrnStatus trn_graph_edge_count(const TrnGraph *g, uint64_t *out);

/**
 * Parses a hypergraph from JSON `{"r": int, "n": int, "edges": [...]}`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be valid. On
 * success `*out` owns a handle freed with [`trn_hypergraph_free`].
 */
TrnStatus trn_hypergraph_from_json(const char *json, TrnHypergraph **out);

/**
 * Frees a hypergraph handle. Null is a no-op.
 *
 * # Safety
 * `f` must come from this library and not be freed twice.
 */
void trn_hypergraph_free(TrnHypergraph *f);

/**
 * Samples a random r-uniform hypergraph with the library's deterministic
 * counter-based generator.
 *
 * # Safety
 * `out` must be valid. On success `*out` owns a handle.
 */
TrnStatus trn_sample_hypergraph(size_t r, size_t n, double p, uint64_t seed, TrnHypergraph **out);

/**
 * The Turán number t_r(n).
 *
 * # Safety
 * `out` must be valid.
 */
TrnStatus trn_turan_number(size_t r, size_t n, uint64_t *out);

/**
 * The restricted extremal number: maximum edges with no K_r meeting a
 * fixed m-set.
 *
 * # Safety
 * `out` must be valid.
 */
TrnStatus trn_turm(size_t r, size_t n, size_t m, uint64_t *out);

/**
 * Does some hyperedge of `f` induce a complete graph in `g`?
 *
 * # Safety
 * `f` and `g` must be live handles; `out` must be valid.
 */
TrnStatus trn_detects(const TrnHypergraph *f, const TrnGraph *g, bool *out);

/**
 * Number of hyperedges of `f` inducing complete graphs in `g`.
 *
 * # Safety
 * `f` and `g` must be live handles; `out` must be valid.
 */
TrnStatus trn_detected_clique_count(const TrnHypergraph *f, const TrnGraph *g, uint64_t *out);

/**
 * Decides whether `f` is exactly Turánnical within the node budget
 * (0 means the default budget). `max_undetected` receives the certified
 * undetected edge count of the returned decision's witness.
 *
 * # Safety
 * `f` must be a live handle; out pointers must be valid.
 */
TrnStatus trn_is_turannical(const TrnHypergraph *f,
                            uint64_t budget_nodes,
                            TrnVerdict *verdict,
                            uint64_t *max_undetected);

/**
 * Decides whether `f` is eps-Turánnical within the node budget
 * (0 means the default budget).
 *
 * # Safety
 * `f` must be a live handle; out pointers must be valid.
 */
TrnStatus trn_is_eps_turannical(const TrnHypergraph *f,
                                double eps,
                                uint64_t budget_nodes,
                                TrnVerdict *verdict,
                                uint64_t *max_undetected);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TURANNICAL_H */
