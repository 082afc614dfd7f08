#ifndef SYMBREAK_H
#define SYMBREAK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SymbreakStatus {
  SYMBREAK_STATUS_OK = 0,
  SYMBREAK_STATUS_NULL_POINTER = 1,
  SYMBREAK_STATUS_INVALID_UTF8 = 2,
  SYMBREAK_STATUS_ARGUMENT = 3,
  SYMBREAK_STATUS_IDENTIFIER = 4,
  SYMBREAK_STATUS_BUDGET_EXCEEDED = 5,
  SYMBREAK_STATUS_CAP_EXCEEDED = 6,
  SYMBREAK_STATUS_PRECONDITION = 7,
  SYMBREAK_STATUS_WITNESS_EXHAUSTED = 8,
  SYMBREAK_STATUS_ANCHOR_NOT_FOUND = 9,
  SYMBREAK_STATUS_STRUCTURE = 10,
  SYMBREAK_STATUS_BEYOND_RADIUS = 11,
  SYMBREAK_STATUS_SCHEDULE = 12,
  SYMBREAK_STATUS_IO = 13,
  SYMBREAK_STATUS_JSON = 14,
  SYMBREAK_STATUS_CONFIG = 15,
  SYMBREAK_STATUS_UNSUPPORTED = 16,
  SYMBREAK_STATUS_PANIC = 17,
} SymbreakStatus;

/**
 * A coloring of a ball in a graph.
 */
typedef struct SymbreakColoring SymbreakColoring;

/**
 * An infinite graph given by its neighbor oracle.
 */
typedef struct SymbreakGraph SymbreakGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *symbreak_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void symbreak_string_free(char *s);

/**
 * Sets the process-wide cap on vertices materialized by one ball.
 */
void symbreak_set_vertex_budget(size_t budget);

/**
 * Builds a graph from a family description: either the compact form
 * (`regular_tree(3)`, `cartesian_product(biinfinite_path,grid2d)`) or
 * key=value assignments (`family=regular_tree d=3`).
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SymbreakStatus symbreak_graph_new(const char *spec, struct SymbreakGraph **out_graph);

/**
 * # Safety
 * `g` must come from [`symbreak_graph_new`] and not have been freed.
 */
void symbreak_graph_free(struct SymbreakGraph *g);

/**
 * The canonical family string of a graph.
 *
 * # Safety
 * Pointers must be valid; the string is released with [`symbreak_string_free`].
 */
enum SymbreakStatus symbreak_graph_family(const struct SymbreakGraph *g, char **out_family);

/**
 * `|B_root(radius)|`. A NULL root means the family's canonical root.
 *
 * # Safety
 * Pointers must be valid; `root` may be NULL.
 */
enum SymbreakStatus symbreak_ball_size(const struct SymbreakGraph *g,
                                       const char *root,
                                       size_t radius,
                                       size_t *out_size);

/**
 * Checks the distinct-spheres condition for all equidistant pairs within
 * `r_pairs` of the root, with witnesses up to `radius`. Writes whether all
 * pairs are witnessed and, if `out_json` is not NULL, the full report.
 *
 * # Safety
 * Pointers must be valid; `root` and `out_json` may be NULL.
 */
enum SymbreakStatus symbreak_check_dsc(const struct SymbreakGraph *g,
                                       const char *root,
                                       size_t r_pairs,
                                       size_t radius,
                                       bool *out_all_witnessed,
                                       char **out_json);

/**
 * Builds a coloring of `B_root(radius)`. `options` holds key=value
 * assignments as in a run config: `strategy`, `radius`, `r_pairs`, `gap`,
 * `epsilon`, `margin`, `schedule`, `seed`. NULL means all defaults.
 *
 * # Safety
 * Pointers must be valid; `root` and `options` may be NULL.
 */
enum SymbreakStatus symbreak_color(const struct SymbreakGraph *g,
                                   const char *root,
                                   const char *options,
                                   struct SymbreakColoring **out_coloring);

/**
 * Reads a coloring from its JSON form.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SymbreakStatus symbreak_coloring_from_json(const char *json,
                                                struct SymbreakColoring **out_coloring);

/**
 * # Safety
 * `c` must come from this library and not have been freed.
 */
void symbreak_coloring_free(struct SymbreakColoring *c);

/**
 * Number of blue vertices.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SymbreakStatus symbreak_coloring_blue_count(const struct SymbreakColoring *c,
                                                 size_t *out_count);

/**
 * # Safety
 * Pointers must be valid; the string is released with [`symbreak_string_free`].
 */
enum SymbreakStatus symbreak_coloring_to_json(const struct SymbreakColoring *c, char **out_json);

/**
 * Checks that no color-preserving automorphism of `B_root(r_outer)` moves
 * a vertex of `B_root(r_inner)`. Requires `r_inner + 4 <= r_outer`.
 *
 * # Safety
 * Pointers must be valid; `out_json` may be NULL.
 */
enum SymbreakStatus symbreak_verify(const struct SymbreakColoring *c,
                                    size_t r_outer,
                                    size_t r_inner,
                                    bool *out_pass,
                                    char **out_json);

/**
 * Length of the longest subgroup chain in `Sym(n)`, for `n >= 1`.
 *
 * # Safety
 * `out_length` must be valid.
 */
enum SymbreakStatus symbreak_chain_length_bound(size_t n, size_t *out_length);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMBREAK_H */
