/* C interface for generalized Hadamard code construction and classification. */

#ifndef GHCODE_H
#define GHCODE_H

/* Generated by cbindgen from the ghcode-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a library call. Values mirror the command-line tool's exit
// codes, with two extra cases that can only arise through the C interface.
typedef enum GhcStatus {
  // The call succeeded.
  GHC_STATUS_OK = 0,
  // The computation ran but the verified property does not hold.
  GHC_STATUS_VERIFICATION_FAILED = 1,
  // A parameter is invalid (non-prime p, bad shift vector, ...).
  GHC_STATUS_INVALID_INPUT = 2,
  // The requested work exceeds the configured budget.
  GHC_STATUS_BUDGET_EXCEEDED = 3,
  // A required pointer argument was NULL.
  GHC_STATUS_NULL_POINTER = 4,
  // An internal consistency check failed.
  GHC_STATUS_INTERNAL = 5,
} GhcStatus;

// Opaque handle to a generator matrix.
typedef struct GhcGenerator GhcGenerator;

// Verification outcome for one constructed code.
typedef struct GhcVerdict {
  // 1 when the code is a generalized Hadamard code, else 0.
  uint8_t is_gh;
  // Number of occurrences of each symbol in every balanced difference
  // (length / p); 0 when `is_gh` is 0.
  uint64_t lambda;
  // Code length over `Z_p`.
  uint64_t length;
  // Number of codewords.
  uint64_t size;
  // Minimum Hamming distance.
  uint64_t min_distance;
} GhcVerdict;

// Full invariant report for one constructed code.
typedef struct GhcReport {
  uint32_t p;
  uint32_t t1;
  uint32_t t2;
  // Length exponent: the code length is p^t.
  uint32_t t;
  // Number of `Z_p` coordinates of the additive code.
  uint64_t alpha1;
  // Number of `Z_{p^2}` coordinates of the additive code.
  uint64_t alpha2;
  uint64_t length;
  uint64_t size;
  uint64_t min_distance;
  // Dimension of the linear span over `Z_p`.
  uint32_t rank;
  // Dimension of the kernel.
  uint32_t kernel_dim;
  // 1 when the code is linear over `Z_p`.
  uint8_t linear;
  // 1 when the code is a generalized Hadamard code.
  uint8_t gh;
  // `length / p` when `gh` is 1, else 0.
  uint64_t lambda;
} GhcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent non-`Ok` status on this thread.
//
// The pointer stays valid until the next library call on the same thread;
// copy the string before calling anything else. Never NULL; the message is
// empty after a successful call.
const char *ghc_last_error(void);

// Creates the generator matrix for the recursive construction with `t1`
// rows of order p^2 and `t2` rows of order p. `t1 = 0` selects the
// single-alphabet construction with `t2` rows over `Z_p`. On success
// `*out` owns the new handle.
//
// # Safety
// `out` must be a valid pointer to writable memory for one pointer.
enum GhcStatus ghc_generator_new(uint32_t p, uint32_t t1, uint32_t t2, struct GhcGenerator **out);

// Like [`ghc_generator_new`] but with an explicit shift vector
// `a_1..a_{p-1}` (length `a_len`) for the order-p^2 seed row. Passing a
// NULL `a`/zero `a_len` uses the canonical choice `a_i = i`.
//
// # Safety
// `out` must be valid for one pointer write; `a` must point to `a_len`
// readable `uint16_t` values (or be NULL when `a_len` is 0).
enum GhcStatus ghc_generator_new_variant(uint32_t p,
                                         uint32_t t1,
                                         uint32_t t2,
                                         const uint16_t *a,
                                         size_t a_len,
                                         struct GhcGenerator **out);

// Releases a handle created by `ghc_generator_new*`. NULL is ignored.
//
// # Safety
// `gen` must be NULL or a pointer previously returned by this library and
// not yet freed.
void ghc_generator_free(struct GhcGenerator *gen);

// Renders the generator matrix in its block layout (`Z_p` columns, a `|`
// separator, `Z_{p^2}` columns). On success `*out` owns a NUL-terminated
// string to be released with [`ghc_string_free`].
//
// # Safety
// `gen` must be a live handle; `out` must be valid for one pointer write.
enum GhcStatus ghc_generator_render_text(const struct GhcGenerator *gen, char **out);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string previously returned by this library and not
// yet freed.
void ghc_string_free(char *s);

// Enumerates the code generated by `gen`, maps it over the Gray map, and
// checks the generalized Hadamard property. Budgets of 0 select the
// defaults (2^21 codewords, 10^10 symbol operations).
//
// Returns `Ok` when the property holds, `VerificationFailed` when it does
// not (with `*out` filled either way), or an error status.
//
// # Safety
// `gen` must be a live handle; `out` must be valid for one `GhcVerdict`
// write.
enum GhcStatus ghc_verify(const struct GhcGenerator *gen,
                          uint64_t max_codewords,
                          uint64_t max_symbol_ops,
                          struct GhcVerdict *out);

// Computes the full invariant report (minimum distance, rank, kernel
// dimension, linearity, Hadamard verdict) for the code generated by `gen`.
// Budgets of 0 select the defaults.
//
// # Safety
// `gen` must be a live handle; `out` must be valid for one `GhcReport`
// write.
enum GhcStatus ghc_invariant_report(const struct GhcGenerator *gen,
                                    uint64_t max_codewords,
                                    uint64_t max_symbol_ops,
                                    uint64_t seed,
                                    struct GhcReport *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GHCODE_H */
