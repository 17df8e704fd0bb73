#ifndef EVIDENTIA_H
#define EVIDENTIA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define EV_RULE_DEMPSTER 0

#define EV_RULE_SMETS 1

#define EV_MODE_LITERAL 0

#define EV_MODE_TABLE 1

#define EV_MODE_TBM 2

/**
 * Pick the arithmetic from the document: fraction strings are exact.
 */
#define EV_NUMERIC_AUTO 0

#define EV_NUMERIC_RATIONAL 1

#define EV_NUMERIC_FLOAT 2

typedef enum EvStatus {
  EV_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EV_STATUS_NULL_POINTER = 1,
  EV_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad input: malformed document, unknown name, out-of-range argument.
   */
  EV_STATUS_VALIDATION = 3,
  /**
   * Valid input the computation cannot handle, e.g. total conflict.
   */
  EV_STATUS_COMPUTATION = 4,
  EV_STATUS_PANIC = 5,
} EvStatus;

/**
 * One body of evidence, exact or floating point.
 */
typedef struct EvBody EvBody;

/**
 * A parsed bundle of bodies on one frame.
 */
typedef struct EvBundle EvBundle;

/**
 * A genetic code: twelve bodies, one per (position, nucleotide).
 */
typedef struct EvCode EvCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or NULL if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *ev_last_error_message(void);

/**
 * Frees a string returned by this library. NULL is a no-op.
 */
void ev_string_free(char *s);

/**
 * Parses a bundle document. `numeric_mode` is one of the `EV_NUMERIC_*` values.
 */
enum EvStatus ev_bundle_from_json(const char *json, uint32_t numeric_mode, struct EvBundle **out);

void ev_bundle_free(struct EvBundle *bundle);

/**
 * Number of bodies in the bundle.
 */
enum EvStatus ev_bundle_len(const struct EvBundle *bundle, size_t *out);

/**
 * Copies body `index` out of the bundle.
 */
enum EvStatus ev_bundle_body(const struct EvBundle *bundle, size_t index, struct EvBody **out);

/**
 * Left fold of all bodies under `rule_id`. `conflict` may be NULL; otherwise
 * it receives the cumulative conflict: `1 - prod(1 - K_i)` over the steps
 * for Dempster's rule, the final empty-set mass for Smets' rule.
 */
enum EvStatus ev_bundle_combine(const struct EvBundle *bundle,
                                uint32_t rule_id,
                                struct EvBody **out,
                                double *conflict);

/**
 * Combines two bodies on the same frame. Two exact bodies give an exact
 * result; otherwise the computation runs in floating point.
 */
enum EvStatus ev_body_combine(const struct EvBody *a,
                              const struct EvBody *b,
                              uint32_t rule_id,
                              struct EvBody **out,
                              double *conflict);

/**
 * Belief and plausibility of a named possibility (or `theta` / `empty`).
 */
enum EvStatus ev_body_interval(const struct EvBody *body,
                               const char *hypothesis,
                               uint32_t mode_id,
                               double *belief,
                               double *plausibility);

/**
 * Total entropy of the body in bits.
 */
enum EvStatus ev_body_entropy(const struct EvBody *body, uint32_t mode_id, double *out);

/**
 * The body as a JSON document; exact bodies keep their fractions.
 */
enum EvStatus ev_body_to_json(const struct EvBody *body, char **out);

void ev_body_free(struct EvBody *body);

/**
 * A shipped code: `toy`, `toy-ambiguous` or `standard`.
 */
enum EvStatus ev_code_builtin(const char *name, uint32_t numeric_mode, struct EvCode **out);

enum EvStatus ev_code_from_json(const char *json, uint32_t numeric_mode, struct EvCode **out);

enum EvStatus ev_code_to_json(const struct EvCode *code, char **out);

/**
 * Mean entropy over all 64 codons, in bits.
 */
enum EvStatus ev_code_entropy(const struct EvCode *code, uint32_t mode_id, double *out);

/**
 * Step-by-step decoding trace of one codon as CSV.
 */
enum EvStatus ev_code_decode(const struct EvCode *code,
                             const char *codon,
                             uint32_t rule_id,
                             uint32_t mode_id,
                             char **out);

/**
 * Samples `samples` translations of `mrna`; the result is a JSON document
 * of counts and frequencies. The same seed always gives the same document.
 */
enum EvStatus ev_code_translate(const struct EvCode *code,
                                const char *mrna,
                                uint64_t samples,
                                uint64_t seed,
                                char **out);

/**
 * Runs entropy descent for at most `steps` proposals. `evolved` receives
 * the final code; `trajectory` (may be NULL) receives the trajectory CSV.
 */
enum EvStatus ev_code_evolve(const struct EvCode *code,
                             size_t steps,
                             uint64_t seed,
                             uint32_t mode_id,
                             struct EvCode **evolved,
                             char **trajectory);

void ev_code_free(struct EvCode *code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EVIDENTIA_H */
