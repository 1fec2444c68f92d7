#ifndef IMPGEN_H
#define IMPGEN_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ImpgenStatus {
  /**
   * Affirmative answer or successful construction.
   */
  IMPGEN_STATUS_OK = 0,
  /**
   * Negative answer.
   */
  IMPGEN_STATUS_NO = 1,
  /**
   * Search budget exhausted without an answer.
   */
  IMPGEN_STATUS_UNKNOWN = 2,
  IMPGEN_STATUS_NULL_ARGUMENT = -1,
  IMPGEN_STATUS_INVALID_UTF8 = -2,
  IMPGEN_STATUS_PARSE = -3,
  IMPGEN_STATUS_RESOURCE_LIMIT = -4,
  IMPGEN_STATUS_INVALID_INPUT = -5,
  IMPGEN_STATUS_INTERNAL = -6,
} ImpgenStatus;

/**
 * Opaque clause handle.
 */
typedef struct ImpgenClause ImpgenClause;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *impgen_last_error(void);

/**
 * Library version as a static string.
 */
const char *impgen_version(void);

/**
 * Parses one clause, e.g. `p(f(X)) :- p(X).`
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` writable.
 */
enum ImpgenStatus impgen_clause_parse(const char *src, struct ImpgenClause **out);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void impgen_clause_free(struct ImpgenClause *c);

/**
 * Canonical text of a clause, to be released with [`impgen_string_free`].
 * Null if `c` is null.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
char *impgen_clause_format(const struct ImpgenClause *c);

/**
 * Number of literals, 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t impgen_clause_len(const struct ImpgenClause *c);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void impgen_string_free(char *s);

/**
 * OK if `c` θ-subsumes `d`, NO otherwise. When `witness` is non-null it
 * receives the substitution as text (free with [`impgen_string_free`]),
 * or null on NO.
 *
 * # Safety
 * `c`, `d` must be live handles; `witness` null or writable.
 */
enum ImpgenStatus impgen_theta_subsumes(const struct ImpgenClause *c,
                                        const struct ImpgenClause *d,
                                        char **witness);

/**
 * # Safety
 * `c`, `d` must be live handles.
 */
enum ImpgenStatus impgen_theta_equivalent(const struct ImpgenClause *c,
                                          const struct ImpgenClause *d);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum ImpgenStatus impgen_reduce(const struct ImpgenClause *c, struct ImpgenClause **out);

/**
 * Reduced LGG under θ-subsumption of `n` clauses.
 *
 * # Safety
 * `items` must point to `n` live handles and `out` be writable.
 */
enum ImpgenStatus impgen_lgg(const struct ImpgenClause *const *items,
                             size_t n,
                             struct ImpgenClause **out);

/**
 * OK if `c` T-implies `d` over the minimal term set of `d` extended
 * `extra_depth` rounds, NO otherwise.
 *
 * # Safety
 * `c`, `d` must be live handles.
 */
enum ImpgenStatus impgen_t_implies(const struct ImpgenClause *c,
                                   const struct ImpgenClause *d,
                                   size_t extra_depth);

/**
 * OK if a clause in the first `depth` resolution layers of `{c}`
 * θ-subsumes `d`, UNKNOWN otherwise. Never answers NO.
 *
 * # Safety
 * `c`, `d` must be live handles.
 */
enum ImpgenStatus impgen_implies_bounded(const struct ImpgenClause *c,
                                         const struct ImpgenClause *d,
                                         size_t depth);

/**
 * Expansion of `c` by a script such as `0#p(f(f(a))), 0#p(f(a))`.
 *
 * # Safety
 * `c` must be a live handle, `script` nul-terminated, `out` writable.
 */
enum ImpgenStatus impgen_expand(const struct ImpgenClause *c,
                                const char *script,
                                struct ImpgenClause **out);

/**
 * LGG under T-implication of `n` clauses over their minimal term set.
 *
 * # Safety
 * `items` must point to `n` live handles and `out` be writable.
 */
enum ImpgenStatus impgen_lggt(const struct ImpgenClause *const *items,
                              size_t n,
                              struct ImpgenClause **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IMPGEN_H */
