/* C interface of the lhring qubit-ring library. */

#ifndef LHRING_H
#define LHRING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every C-ABI call.
typedef enum LhrStatus {
  // Operation completed.
  LHR_STATUS_OK = 0,
  // A required pointer argument was null.
  LHR_STATUS_NULL_POINTER = 1,
  // Arguments violated a precondition (range, parity, normalization).
  LHR_STATUS_INVALID_ARGUMENT = 2,
  // A numerical guarantee could not be met (non-convergence, leak).
  LHR_STATUS_NUMERICAL_FAILURE = 3,
  // The caller-provided buffer is too small; nothing was written.
  LHR_STATUS_BUFFER_TOO_SMALL = 4,
} LhrStatus;

// Opaque Hermitian operator handle.
typedef struct LhrHamiltonian LhrHamiltonian;

// Ring parameters: pigment excitation `e0` and neighbor interaction `v0`
// (cm^-1), exciton index bound `big_n`, loop size `two_n` (even).
typedef struct LhrRingParams {
  double e0;
  double v0;
  uint32_t big_n;
  uint32_t two_n;
} LhrRingParams;

// Field frequency, detuning, coupling, and Fock truncation (hbar = 1).
typedef struct LhrJcParams {
  double nu;
  double delta;
  double g;
  uint32_t n_max;
} LhrJcParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static name of a status code.
const char *lhr_status_name(enum LhrStatus status);

// Lattice constants e = E0 - 2 V0 and v = V0 (1 - cos(pi/N)).
//
// # Safety
// `params`, `e_out`, and `v_out` must be valid for reads/writes.
enum LhrStatus lhr_ring_constants(const struct LhrRingParams *params, double *e_out, double *v_out);

// Gap between adjacent lattice levels, 2 V0 (1 - cos(pi/N)).
//
// # Safety
// `params` and `gap_out` must be valid.
enum LhrStatus lhr_level_gap(const struct LhrRingParams *params, double *gap_out);

// Exciton band E_n = E0 + 2 V0 cos(n pi/N) for n = -N+1..=N (2N entries).
// `written` receives the number of rows; `capacity` below 2N fails without
// writing.
//
// # Safety
// `indices_out` and `energies_out` must point to at least `capacity`
// elements each.
enum LhrStatus lhr_exciton_energies(const struct LhrRingParams *params,
                                    int32_t *indices_out,
                                    double *energies_out,
                                    size_t capacity,
                                    size_t *written);

// Closed-form lattice spectrum E_l for l = -n+1..=n (two_n entries).
//
// # Safety
// `modes_out` and `energies_out` must point to at least `capacity`
// elements each.
enum LhrStatus lhr_lattice_spectrum(const struct LhrRingParams *params,
                                    int32_t *modes_out,
                                    double *energies_out,
                                    size_t capacity,
                                    size_t *written);

// Continuous exciton index of the top lattice level, whether any integer
// index solves the relation exactly, and the level energy.
//
// # Safety
// All out-pointers must be valid for writes.
enum LhrStatus lhr_extra_level(const struct LhrRingParams *params,
                               double *index_out,
                               int32_t *has_integer_out,
                               int32_t *integer_out,
                               double *energy_out);

// Entropy cascade of the mode-`l` eigenstate (l in {-1, 0, 1, 2}):
// three entropies (bits) and the three descending weight pairs.
//
// # Safety
// `entropies_out` must hold 3 elements, `lambdas_out` 6 (pairs in split
// order).
enum LhrStatus lhr_entropy_cascade(int32_t l, double *entropies_out, double *lambdas_out);

// Rabi frequency sqrt(delta^2 + g^2 (n+1)).
//
// # Safety
// `params` and `out` must be valid.
enum LhrStatus lhr_rabi_frequency(const struct LhrJcParams *params, uint32_t n, double *out);

// Dressed-state mixing ratio, energy, and entanglement entropy for the
// doublet at photon index `n`; `sign` is +1 for the upper branch, -1 for
// the lower. The decoupled minus branch reports beta = +infinity.
//
// # Safety
// All out-pointers must be valid for writes.
enum LhrStatus lhr_dressed_state(const struct LhrJcParams *params,
                                 uint32_t n,
                                 int32_t sign,
                                 double *beta_out,
                                 double *energy_out,
                                 double *entropy_out);

// Excited-level population on a uniform grid of `steps` samples over
// [0, t_max], starting from |n+1, 0>. Fails with a numerical status when
// population reaches the truncation level.
//
// # Safety
// `t_out` and `population_out` must point to at least `steps` elements.
enum LhrStatus lhr_rabi_series(const struct LhrJcParams *params,
                               uint32_t n,
                               double t_max,
                               size_t steps,
                               double *t_out,
                               double *population_out);

// Ring Hamiltonian handle; `single_excitation` selects the two_n-dimensional
// block (non-zero) or the full 2^two_n operator (zero).
//
// # Safety
// `out` must be valid; the returned handle must be released with
// [`lhr_hamiltonian_free`].
enum LhrStatus lhr_hamiltonian_ring_new(const struct LhrRingParams *params,
                                        int32_t single_excitation,
                                        struct LhrHamiltonian **out);

// Truncated Jaynes-Cummings Hamiltonian handle.
//
// # Safety
// `out` must be valid; release the handle with [`lhr_hamiltonian_free`].
enum LhrStatus lhr_hamiltonian_jc_new(const struct LhrJcParams *params,
                                      struct LhrHamiltonian **out);

// Dimension of the operator behind the handle; 0 for a null handle.
//
// # Safety
// `handle` must be null or a live handle from a `_new` function.
size_t lhr_hamiltonian_dim(const struct LhrHamiltonian *handle);

// Ascending eigenvalues of the operator behind the handle.
//
// # Safety
// `out` must point to at least `capacity` elements.
enum LhrStatus lhr_hamiltonian_eigenvalues(const struct LhrHamiltonian *handle,
                                           double *out,
                                           size_t capacity,
                                           size_t *written);

// In-place evolution of a state under exp(-iHt); `re`/`im` carry the real
// and imaginary amplitude parts and must have length `dim` equal to the
// operator dimension.
//
// # Safety
// `re` and `im` must point to `dim` writable elements each.
enum LhrStatus lhr_hamiltonian_evolve(const struct LhrHamiltonian *handle,
                                      double *re,
                                      double *im,
                                      size_t dim,
                                      double t);

// Releases a handle returned by a `_new` function; null is a no-op.
//
// # Safety
// `handle` must be null or a live handle that has not been freed.
void lhr_hamiltonian_free(struct LhrHamiltonian *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LHRING_H */
