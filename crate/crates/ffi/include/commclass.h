#ifndef COMMCLASS_H
#define COMMCLASS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Non-zero values match the command-line exit statuses.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID = 2,
  CC_STATUS_CAP_EXCEEDED = 3,
  CC_STATUS_UNREALIZABLE = 4,
  CC_STATUS_PROPERTY_VIOLATION = 5,
} CcStatus;

typedef struct CcGraph CcGraph;

typedef struct CcPermutation CcPermutation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Owned by the
 * library; valid until the next call.
 */
const char *cc_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void cc_string_free(char *s);

/**
 * Parses one-line notation ("25431" or "2,5,4,3,1").
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum CcStatus cc_perm_parse(const char *text, struct CcPermutation **out);

/**
 * # Safety
 * `p` must come from [`cc_perm_parse`] or be NULL.
 */
void cc_perm_free(struct CcPermutation *p);

/**
 * Size n of the permutation, or 0 for NULL.
 *
 * # Safety
 * `p` must be a live handle or NULL.
 */
size_t cc_perm_size(const struct CcPermutation *p);

/**
 * Coxeter length (number of inversions), or 0 for NULL.
 *
 * # Safety
 * `p` must be a live handle or NULL.
 */
size_t cc_perm_length(const struct CcPermutation *p);

/**
 * Number of 321-occurrences, which is the diameter of the class graph.
 *
 * # Safety
 * `p` must be a live handle or NULL.
 */
size_t cc_perm_triple_count(const struct CcPermutation *p);

/**
 * Writes the minimal (`maximal = false`) or maximal extremal reduced word.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_perm_extremal_word(const struct CcPermutation *p, bool maximal, char **out);

/**
 * Builds the commutation-class graph. Zero caps select the defaults.
 *
 * A graph truncated by a cap is still returned through `out` together with
 * `CC_STATUS_CAP_EXCEEDED`; its metrics are unavailable.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_graph_build(const struct CcPermutation *p,
                             size_t word_cap,
                             size_t class_cap,
                             struct CcGraph **out);

/**
 * # Safety
 * `g` must come from [`cc_graph_build`] or be NULL.
 */
void cc_graph_free(struct CcGraph *g);

/**
 * Number of classes (vertices), or 0 for NULL.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t cc_graph_class_count(const struct CcGraph *g);

/**
 * Number of edges, or 0 for NULL.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t cc_graph_edge_count(const struct CcGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_graph_diameter(const struct CcGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_graph_radius(const struct CcGraph *g, size_t *out);

/**
 * Writes the graph as pretty-printed JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_graph_to_json(const struct CcGraph *g, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMMCLASS_H */
