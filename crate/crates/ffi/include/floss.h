#ifndef FLOSS_H
#define FLOSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first five agree with the `floss` exit codes.
 */
typedef enum FlossStatus {
  FLOSS_STATUS_OK = 0,
  FLOSS_STATUS_OTHER = 1,
  FLOSS_STATUS_PARSE = 2,
  FLOSS_STATUS_CAPACITY = 3,
  FLOSS_STATUS_EMPTY_DOMAIN = 4,
  FLOSS_STATUS_NULL_POINTER = 5,
  FLOSS_STATUS_INVALID_UTF8 = 6,
  FLOSS_STATUS_PANIC = 7,
} FlossStatus;

/**
 * Quantities held by a report.
 */
typedef enum FlossQuantity {
  FLOSS_QUANTITY_P_THEORY = 0,
  FLOSS_QUANTITY_P_STRONG = 1,
  FLOSS_QUANTITY_P_WEAK = 2,
  FLOSS_QUANTITY_LOSS_NC = 3,
  FLOSS_QUANTITY_LOSS_SC = 4,
  FLOSS_QUANTITY_LOSS_T = 5,
} FlossQuantity;

typedef enum FlossOp {
  FLOSS_OP_STRONG = 0,
  FLOSS_OP_WEAK = 1,
} FlossOp;

/**
 * Result of a loss computation.
 */
typedef struct FlossReport FlossReport;

/**
 * A parsed theory file.
 */
typedef struct FlossTheory FlossTheory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a theory file held in `source`. `name` labels reports and may be null.
 *
 * # Safety
 * `name` (if not null) and `source` must be NUL-terminated strings; `out`
 * must be writable.
 */
enum FlossStatus floss_theory_parse(const char *name, const char *source, struct FlossTheory **out);

/**
 * # Safety
 * `theory` must come from [`floss_theory_parse`] and not be freed twice.
 */
void floss_theory_free(struct FlossTheory *theory);

/**
 * Exact loss measures. A null `policy` uses the file's `forget:` section;
 * otherwise it is a comma-separated list of symbols. `uniform` ignores the
 * file's `prob` declarations.
 *
 * # Safety
 * Pointers must be valid as described; `out` must be writable.
 */
enum FlossStatus floss_measure(const struct FlossTheory *theory,
                               const char *policy,
                               bool uniform,
                               uint32_t cap,
                               struct FlossReport **out);

/**
 * Sampled loss measures with a seeded generator.
 *
 * # Safety
 * As for [`floss_measure`].
 */
enum FlossStatus floss_measure_sampled(const struct FlossTheory *theory,
                                       const char *policy,
                                       bool uniform,
                                       uint64_t samples,
                                       uint64_t seed,
                                       struct FlossReport **out);

/**
 * Nearest `double` to a report quantity.
 *
 * # Safety
 * `report` must be live; `out` must be writable.
 */
enum FlossStatus floss_report_value(const struct FlossReport *report,
                                    enum FlossQuantity quantity,
                                    double *out);

/**
 * Exact text of a report quantity: a decimal, or `n/d` if it does not terminate.
 *
 * # Safety
 * `report` must be live; `out` must be writable. Free the result with
 * [`floss_string_free`].
 */
enum FlossStatus floss_report_decimal(const struct FlossReport *report,
                                      enum FlossQuantity quantity,
                                      char **out);

/**
 * The report as a JSON object.
 *
 * # Safety
 * As for [`floss_report_decimal`].
 */
enum FlossStatus floss_report_to_json(const struct FlossReport *report, char **out);

/**
 * # Safety
 * `report` must come from a measure call and not be freed twice.
 */
void floss_report_free(struct FlossReport *report);

/**
 * Render the strong or weak forgetting of `policy` (null: the file's policy).
 *
 * # Safety
 * As for [`floss_measure`]; free the result with [`floss_string_free`].
 */
enum FlossStatus floss_forget(const struct FlossTheory *theory,
                              const char *policy,
                              enum FlossOp op,
                              char **out);

/**
 * ProbLog program computing the theory's probability.
 *
 * # Safety
 * As for [`floss_forget`].
 */
enum FlossStatus floss_compile_problog(const struct FlossTheory *theory, bool uniform, char **out);

/**
 * Number of models over the ground vocabulary, as a decimal string.
 *
 * # Safety
 * As for [`floss_forget`].
 */
enum FlossStatus floss_model_count(const struct FlossTheory *theory, uint32_t cap, char **out);

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *floss_last_error_message(void);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void floss_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLOSS_H */
