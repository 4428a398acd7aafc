#ifndef MZVLAB_H
#define MZVLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum MzvStatus {
  MZV_STATUS_OK = 0,
  MZV_STATUS_PARSE = 1,
  MZV_STATUS_LENGTH_MISMATCH = 2,
  MZV_STATUS_INADMISSIBLE = 3,
  MZV_STATUS_DOMAIN = 4,
  MZV_STATUS_INVALID = 5,
  MZV_STATUS_UNSUPPORTED = 6,
  MZV_STATUS_NO_CONVERGENCE = 7,
  MZV_STATUS_SIZE_GUARD = 8,
  MZV_STATUS_NULL_POINTER = 9,
  MZV_STATUS_UTF8 = 10,
  MZV_STATUS_PANIC = 11,
} MzvStatus;

/**
 * Outcome of a verification.
 */
typedef enum MzvVerdict {
  MZV_VERDICT_PASS = 0,
  MZV_VERDICT_FAIL = 1,
  MZV_VERDICT_SKIPPED = 2,
} MzvVerdict;

/**
 * A parsed labeled poset.
 */
typedef struct MzvPoset MzvPoset;

/**
 * One verification report.
 */
typedef struct MzvReport MzvReport;

/**
 * A computed value.
 */
typedef struct MzvValue MzvValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Owned by the library and valid until the next call.
 */
const char *mzv_last_error(void);

/**
 * Library version as a static string.
 */
const char *mzv_version(void);

/**
 * Free a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void mzv_string_free(char *s);

/**
 * Evaluate a value of `family` (e.g. "mzv", "mpl", "t", "m", "conv_zeta").
 * `labels`, `l`, `eta`, `eps` and `a` may be null. `prec == 0` selects the
 * default precision.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum MzvStatus mzv_eval(const char *family,
                        const char *index,
                        const char *labels,
                        const char *l,
                        const char *eta,
                        const char *eps,
                        const char *a,
                        uint32_t prec,
                        struct MzvValue **out);

/**
 * Decimal (or `p/q` for exact values) rendering, owned by the handle.
 *
 * # Safety
 * `v` must be a live handle or null.
 */
const char *mzv_value_string(const struct MzvValue *v);

/**
 * Real part as a double; NaN for a null handle.
 *
 * # Safety
 * `v` must be a live handle or null.
 */
double mzv_value_re(const struct MzvValue *v);

/**
 * Absolute error bound; 0 for exact values, NaN for a null handle.
 *
 * # Safety
 * `v` must be a live handle or null.
 */
double mzv_value_err(const struct MzvValue *v);

/**
 * 1 if the value is an exact rational, 0 otherwise.
 *
 * # Safety
 * `v` must be a live handle or null.
 */
int32_t mzv_value_is_exact(const struct MzvValue *v);

/**
 * # Safety
 * `v` must come from this library and not be freed twice.
 */
void mzv_value_free(struct MzvValue *v);

/**
 * Hoffman dual of a comma-separated composition, as a new string.
 *
 * # Safety
 * `index` must be NUL-terminated; `out` must be writable.
 */
enum MzvStatus mzv_dual(const char *index, char **out);

/**
 * Parse a poset from the text format (`id: label` and `a<b` lines).
 *
 * # Safety
 * `src` must be NUL-terminated; `out` must be writable.
 */
enum MzvStatus mzv_poset_parse(const char *src, struct MzvPoset **out);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
size_t mzv_poset_len(const struct MzvPoset *p);

/**
 * Number of linear extensions.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum MzvStatus mzv_poset_extensions(const struct MzvPoset *p, uint64_t *out);

/**
 * `Ok` if admissible, otherwise `Inadmissible` with the offending element
 * id written to `witness` (which may be null).
 *
 * # Safety
 * `p` must be a live handle; `witness` must be null or writable.
 */
enum MzvStatus mzv_poset_admissible(const struct MzvPoset *p, uint32_t *witness);

/**
 * The poset integral at `prec` bits (0 for the default).
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum MzvStatus mzv_poset_eval(const struct MzvPoset *p, uint32_t prec, struct MzvValue **out);

/**
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void mzv_poset_free(struct MzvPoset *p);

/**
 * Verify one instance of identity `id`. `params` holds `name=value` items
 * separated by `;`, e.g. `"k=2,1;x=1/2,1/3;n=4"`. `mode` is "exact",
 * "float", or null for the entry's default.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum MzvStatus mzv_verify(const char *id,
                          const char *params,
                          const char *mode,
                          uint32_t prec,
                          struct MzvReport **out);

/**
 * Verdict of a report; `Skipped` for a null handle.
 *
 * # Safety
 * `r` must be a live handle or null.
 */
enum MzvVerdict mzv_report_verdict(const struct MzvReport *r);

/**
 * |residual| as a double (0 when there is none).
 *
 * # Safety
 * `r` must be a live handle or null.
 */
double mzv_report_residual(const struct MzvReport *r);

/**
 * The report as a JSON object, owned by the handle.
 *
 * # Safety
 * `r` must be a live handle or null.
 */
const char *mzv_report_json(const struct MzvReport *r);

/**
 * # Safety
 * `r` must come from this library and not be freed twice.
 */
void mzv_report_free(struct MzvReport *r);

/**
 * Run `budget` generated cases of `id`; the summary JSON goes to `out`
 * (free with [`mzv_string_free`]). `bounds` may be null.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum MzvStatus mzv_fuzz(const char *id,
                        uint32_t budget,
                        uint64_t seed,
                        const char *bounds,
                        uint32_t prec,
                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MZVLAB_H */
