#ifndef SQUEEZE_JUMP_H
#define SQUEEZE_JUMP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SjStatus {
  SJ_STATUS_OK = 0,
  SJ_STATUS_NULL_POINTER = 1,
  SJ_STATUS_INVALID_PARAMETER = 2,
  SJ_STATUS_DEGENERATE_FACTORIZATION = 3,
  SJ_STATUS_TRUNCATION_UNSAFE = 4,
  SJ_STATUS_BUFFER_TOO_SMALL = 5,
  SJ_STATUS_PANIC = 6,
} SjStatus;

// Opaque truncated Fock-basis state.
typedef struct SjFockState SjFockState;

// Opaque two-jump protocol.
typedef struct SjProtocol SjProtocol;

typedef struct SjComplex {
  double re;
  double im;
} SjComplex;

// Normal-ordered factors `exp(Λ₊K₊)·exp(ln Λ₃ K_c)·exp(Λ₋K₋)`.
typedef struct SjFactorized {
  struct SjComplex plus;
  struct SjComplex three;
  struct SjComplex minus;
  // Continuous branch of `ln Λ₃`.
  struct SjComplex log_three;
} SjFactorized;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty if none.
//
// The pointer stays valid until the next failing call on the same thread.
const char *sj_last_error(void);

// Library version as a static NUL-terminated string.
const char *sj_version(void);

// Creates a protocol with frequencies `omega0`, `omega1` and first-interval
// length `tau`, all positive.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum SjStatus sj_protocol_new(double omega0, double omega1, double tau, struct SjProtocol **out);

// Releases a protocol handle; null is ignored.
//
// # Safety
// `p` must come from [`sj_protocol_new`] and not be used afterwards.
void sj_protocol_free(struct SjProtocol *p);

// `r(t)`.
//
// # Safety
// `p` must be a live protocol handle and `out` writable.
enum SjStatus sj_squeezing_parameter(const struct SjProtocol *p, double t, double *out);

// Squeezing amplitude `r` and phase `φ` at time `t`.
//
// # Safety
// `p` must be a live protocol handle; `r` and `phi` writable.
enum SjStatus sj_state_at(const struct SjProtocol *p, double t, double *r, double *phi);

// `(ΔQ_λ)²` at time `t`.
//
// # Safety
// `p` must be a live protocol handle and `out` writable.
enum SjStatus sj_variance_at(const struct SjProtocol *p, double t, double lambda, double *out);

// Persistence probability `Z` after the second jump.
//
// # Safety
// `p` must be a live protocol handle and `out` writable.
enum SjStatus sj_persistence(const struct SjProtocol *p, double *out);

// Excitation probability `1 − Z`.
//
// # Safety
// `p` must be a live protocol handle and `out` writable.
enum SjStatus sj_excitation_probability(const struct SjProtocol *p, double *out);

// `P(n)` for `n = 0..=n_max` after the second jump into `buf`.
//
// `*needed` (if non-null) receives `n_max + 1`.
//
// # Safety
// `p` must be a live protocol handle; `buf` must hold `len` doubles.
enum SjStatus sj_photon_distribution(const struct SjProtocol *p,
                                     size_t n_max,
                                     double tail_tol,
                                     double *buf,
                                     size_t len,
                                     size_t *needed);

// Disentangles `exp(λ₊K₊ + λ₋K₋ + λ₃K_c)`; `sign` is `+1` for su(1,1) and
// `−1` for su(2).
//
// # Safety
// `out` must be writable.
enum SjStatus sj_factorize(struct SjComplex plus,
                           struct SjComplex minus,
                           struct SjComplex three,
                           int32_t sign,
                           struct SjFactorized *out);

// Analytic state at time `t` expanded on `truncation + 1` Fock levels.
//
// # Safety
// `p` must be a live protocol handle and `out` writable.
enum SjStatus sj_analytic_fock_state(const struct SjProtocol *p,
                                     double t,
                                     size_t truncation,
                                     struct SjFockState **out);

// Vacuum propagated numerically through both intervals on a truncated
// basis, with the default truncation policy.
//
// # Safety
// `p` must be a live protocol handle and `out` writable.
enum SjStatus sj_oracle_fock_state(const struct SjProtocol *p,
                                   double t,
                                   size_t truncation,
                                   struct SjFockState **out);

// Releases a Fock state handle; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void sj_fock_state_free(struct SjFockState *s);

// Highest level `N`; the state has `N + 1` amplitudes. Returns 0 for null.
//
// # Safety
// `s` must be null or a live Fock state handle.
size_t sj_fock_state_truncation(const struct SjFockState *s);

// Copies the amplitudes into `buf`.
//
// # Safety
// `s` must be a live handle; `buf` must hold `len` values.
enum SjStatus sj_fock_state_amplitudes(const struct SjFockState *s,
                                       struct SjComplex *buf,
                                       size_t len,
                                       size_t *needed);

// `|⟨a|b⟩|²` for states of equal truncation.
//
// # Safety
// `a` and `b` must be live handles and `out` writable.
enum SjStatus sj_fock_state_fidelity(const struct SjFockState *a,
                                     const struct SjFockState *b,
                                     double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQUEEZE_JUMP_H */
