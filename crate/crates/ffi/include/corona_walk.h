#ifndef CORONA_WALK_H
#define CORONA_WALK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwConstruction {
  CW_CONSTRUCTION_AUTO = 0,
  CW_CONSTRUCTION_THEOREM51 = 1,
  CW_CONSTRUCTION_THEOREM53 = 2,
  CW_CONSTRUCTION_SCAN = 3,
} CwConstruction;

typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_NULL_POINTER = 1,
  CW_STATUS_INVALID_UTF8 = 2,
  CW_STATUS_INVALID_ARGUMENT = 3,
  CW_STATUS_UNKNOWN_FAMILY = 4,
  CW_STATUS_INVALID_GRAPH = 5,
  CW_STATUS_VERTEX_OUT_OF_RANGE = 6,
  CW_STATUS_PARSE = 7,
  CW_STATUS_HYPOTHESIS_NOT_MET = 8,
  CW_STATUS_UNDECIDABLE = 9,
  CW_STATUS_BUDGET_EXCEEDED = 10,
  CW_STATUS_NO_CONVERGENCE = 11,
  CW_STATUS_INTERNAL = 12,
  CW_STATUS_PANIC = 13,
} CwStatus;

// Opaque graph handle.
typedef struct CwGraph CwGraph;

// Flat view of a PST certificate. Fields other than `is_pst` are zero
// unless PST holds.
typedef struct CwPstResult {
  bool is_pst;
  uint64_t delta;
  uint64_t g;
  double tau0;
  double phase_re;
  double phase_im;
} CwPstResult;

// Flat view of a PGST witness. `alpha` is 0 for the scan construction.
typedef struct CwPgstResult {
  bool success;
  double t0;
  double fidelity;
  uint64_t alpha;
} CwPgstResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a family graph from a spec such as `"cycle:4"`.
//
// # Safety
// `spec` must be a valid C string and `out` a valid pointer.
enum CwStatus cw_graph_from_family(const char *spec, struct CwGraph **out);

// Parses the graph JSON format.
//
// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum CwStatus cw_graph_from_json(const char *json, struct CwGraph **out);

// Serializes a graph; free the result with `cw_string_free`.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum CwStatus cw_graph_to_json(const struct CwGraph *g, char **out);

// Neighborhood corona of `g1` and `g2`, as a new handle.
//
// # Safety
// `g1`, `g2` must be live handles and `out` a valid pointer.
enum CwStatus cw_graph_corona(const struct CwGraph *g1,
                              const struct CwGraph *g2,
                              struct CwGraph **out);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t cw_graph_vertex_count(const struct CwGraph *g);

// Releases a handle. Null is a no-op.
//
// # Safety
// `g` must be null or a handle not yet freed.
void cw_graph_free(struct CwGraph *g);

// Transition amplitude `(e^{-itA})[u][v]`.
//
// # Safety
// `g` must be a live handle; `re`, `im` valid pointers.
enum CwStatus cw_transition_amplitude(const struct CwGraph *g,
                                      size_t u,
                                      size_t v,
                                      double t,
                                      double *re,
                                      double *im);

// PST certificate for `(u, v)`. A negative verdict still returns
// `CW_STATUS_OK` with `is_pst = false`. `json_out` may be null; otherwise
// it receives the full certificate JSON.
//
// # Safety
// `g` must be a live handle, `out` valid, `json_out` null or valid.
enum CwStatus cw_certify_pst(const struct CwGraph *g,
                             size_t u,
                             size_t v,
                             struct CwPstResult *out,
                             char **json_out);

// PGST witness search. `alpha_max = 0` selects the default budget. The scan
// construction searches `t ∈ [0, 100]` on 100001 samples. `json_out` may be
// null.
//
// # Safety
// `g` must be a live handle, `out` valid, `json_out` null or valid.
enum CwStatus cw_search_pgst(const struct CwGraph *g,
                             size_t u,
                             size_t v,
                             double epsilon,
                             uint64_t alpha_max,
                             enum CwConstruction construction,
                             struct CwPgstResult *out,
                             char **json_out);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void cw_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread; do not free.
const char *cw_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORONA_WALK_H */
