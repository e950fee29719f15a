#ifndef AMD_H
#define AMD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AmdStatus {
  AMD_STATUS_OK = 0,
  AMD_STATUS_INVALID_ARGUMENT = 1,
  // No definite answer (no witness, unknown verdict, unresolved factoring).
  AMD_STATUS_UNKNOWN = 2,
  // A digraph failed verification.
  AMD_STATUS_ORACLE_FAILED = 3,
  AMD_STATUS_NULL_POINTER = 4,
  AMD_STATUS_PARSE = 5,
  AMD_STATUS_PANIC = 6,
} AmdStatus;

typedef enum AmdVerdict {
  AMD_VERDICT_EXISTS = 0,
  AMD_VERDICT_NOT_EXIST_SELF_REPEAT = 1,
  AMD_VERDICT_UNKNOWN = 2,
} AmdVerdict;

typedef enum AmdMethod {
  AMD_METHOD_NONE = 0,
  AMD_METHOD_KNOWN_K2 = 1,
  AMD_METHOD_LITERATURE_K34 = 2,
  AMD_METHOD_LITERATURE_D23 = 3,
  AMD_METHOD_PRIME_WITNESS = 4,
  AMD_METHOD_THRESHOLD_ODD = 5,
  AMD_METHOD_THRESHOLD_EVEN = 6,
  AMD_METHOD_CONJECTURE_ELIMINATION = 7,
} AmdMethod;

typedef enum AmdFactorVerdict {
  AMD_FACTOR_VERDICT_IRREDUCIBLE = 0,
  AMD_FACTOR_VERDICT_REDUCIBLE = 1,
  AMD_FACTOR_VERDICT_UNRESOLVED = 2,
} AmdFactorVerdict;

typedef struct AmdCertificate AmdCertificate;

typedef struct AmdDigraph AmdDigraph;

typedef struct AmdFactorReport AmdFactorReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until
// the next failing call on the same thread.
const char *amd_last_error(void);

// Static version string.
const char *amd_version(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void amd_string_free(char *s);

// Decides `(d, k)`. `literature` selects whether published nonexistence
// results may be used.
//
// # Safety
// `out` must be valid for writes.
enum AmdStatus amd_decide(uint64_t d, uint64_t k, bool literature, struct AmdCertificate **out);

// # Safety
// `c` must be a live certificate handle or NULL.
void amd_certificate_free(struct AmdCertificate *c);

// # Safety
// `c` must be a live certificate handle.
enum AmdVerdict amd_certificate_verdict(const struct AmdCertificate *c);

// # Safety
// `c` must be a live certificate handle.
enum AmdMethod amd_certificate_method(const struct AmdCertificate *c);

// Writes the witness prime; `AMD_STATUS_UNKNOWN` when there is none.
//
// # Safety
// `c` must be a live handle and `out` valid for writes.
enum AmdStatus amd_certificate_witness(const struct AmdCertificate *c, uint64_t *out);

// JSON text of the certificate; free with `amd_string_free`.
//
// # Safety
// `c` must be a live certificate handle.
char *amd_certificate_to_json(const struct AmdCertificate *c);

// # Safety
// `json` must be a NUL-terminated string and `out` valid for writes.
enum AmdStatus amd_certificate_from_json(const char *json, struct AmdCertificate **out);

// Re-checks every claim in the certificate from `(d, k)`.
//
// # Safety
// `c` must be a live certificate handle.
enum AmdStatus amd_certificate_validate(const struct AmdCertificate *c);

// Smallest prime `l` coprime to `k` with `1 < l < (k+1)/(d-1)`;
// `AMD_STATUS_UNKNOWN` when none exists.
//
// # Safety
// `out` must be valid for writes.
enum AmdStatus amd_prime_witness(uint64_t d, uint64_t k, uint64_t *out);

// Sum of the `ell`-th powers of the primitive `n`-th roots of unity.
//
// # Safety
// `out` must be valid for writes.
enum AmdStatus amd_ramanujan_sum(uint64_t ell, uint64_t n, int64_t *out);

// Factors `F_{i,k}`.
//
// # Safety
// `out` must be valid for writes.
enum AmdStatus amd_factor(uint64_t i, uint64_t k, struct AmdFactorReport **out);

// # Safety
// `r` must be a live report handle or NULL.
void amd_factor_report_free(struct AmdFactorReport *r);

// # Safety
// `r` must be a live report handle.
enum AmdFactorVerdict amd_factor_report_verdict(const struct AmdFactorReport *r);

// Copies up to `cap` factor degrees (ascending) into `buf` and writes the
// total count to `len`. Pass `cap = 0` to query the count.
//
// # Safety
// `r` must be live, `len` valid for writes, `buf` valid for `cap` writes.
enum AmdStatus amd_factor_report_degrees(const struct AmdFactorReport *r,
                                         uint64_t *buf,
                                         uintptr_t cap,
                                         uintptr_t *len);

// Parses the `n d k` digraph text format.
//
// # Safety
// `text` must be NUL-terminated and `out` valid for writes.
enum AmdStatus amd_digraph_parse(const char *text, struct AmdDigraph **out);

// The `(d, 2)` line digraph of the complete digraph on `d + 1` symbols.
//
// # Safety
// `out` must be valid for writes.
enum AmdStatus amd_digraph_line_complete(uint64_t d, struct AmdDigraph **out);

// # Safety
// `g` must be a live digraph handle or NULL.
void amd_digraph_free(struct AmdDigraph *g);

// Canonical text form; free with `amd_string_free`.
//
// # Safety
// `g` must be a live digraph handle.
char *amd_digraph_serialize(const struct AmdDigraph *g);

// Checks `I + A + ... + A^k = J + P`; writes the number of self-repeats.
//
// # Safety
// `g` must be live; `self_repeats` may be NULL.
enum AmdStatus amd_digraph_verify(const struct AmdDigraph *g, uint64_t *self_repeats);

// Runs the full structural battery; the first failed assertion is
// reported through `amd_last_error`.
//
// # Safety
// `g` must be a live digraph handle.
enum AmdStatus amd_digraph_battery(const struct AmdDigraph *g);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AMD_H */
