#ifndef QTHERMO_H
#define QTHERMO_H

/* Generated by cbindgen from the qthermo-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  QT_STATUS_OK = 0,
  QT_STATUS_NULL_POINTER = 1,
  QT_STATUS_INVALID_ARGUMENT = 2,
  QT_STATUS_DIMENSION_MISMATCH = 3,
  QT_STATUS_NOT_HERMITIAN = 4,
  QT_STATUS_INVALID_STATE = 5,
  QT_STATUS_UNKNOWN_EXPERIMENT = 6,
  QT_STATUS_INVALID_CONFIG = 7,
  QT_STATUS_PANIC = 8,
} QtStatus;

/**
 * Validated density matrix.
 */
typedef struct QtDensity QtDensity;

/**
 * Hermitian Hamiltonian with its cached spectrum.
 */
typedef struct QtHamiltonian QtHamiltonian;

/**
 * Dense complex square matrix.
 */
typedef struct QtMatrix QtMatrix;

/**
 * Energies and ergotropy of a state.
 */
typedef struct {
  double input_energy;
  double passive_energy;
  double ergotropy;
} QtWork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next `qt_*` call on the thread.
 */
const char *qt_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qt_version(void);

/**
 * Builds a `dim × dim` matrix from row-major parts; `im` may be null.
 *
 * # Safety
 * `re` (and `im` when non-null) must point to `dim * dim` doubles; `out`
 * must be writable.
 */
QtStatus qt_matrix_new(size_t dim, const double *re, const double *im, QtMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void qt_matrix_free(QtMatrix *m);

/**
 * Dimension of `m`, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t qt_matrix_dim(const QtMatrix *m);

/**
 * Entry `(row, col)`.
 *
 * # Safety
 * `m` must be a live handle; `re` and `im` must be writable.
 */
QtStatus qt_matrix_get(const QtMatrix *m, size_t row, size_t col, double *re, double *im);

/**
 * Validates `m` as a density matrix (Hermitian, unit trace, positive).
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
QtStatus qt_density_new(const QtMatrix *m, QtDensity **out);

/**
 * `|ψ⟩⟨ψ|` for a normalized vector; `im` may be null.
 *
 * # Safety
 * `re` (and `im` when non-null) must point to `dim` doubles; `out` must be
 * writable.
 */
QtStatus qt_density_from_pure(size_t dim, const double *re, const double *im, QtDensity **out);

/**
 * # Safety
 * `rho` must be null or a live handle.
 */
void qt_density_free(QtDensity *rho);

/**
 * Copies the state's matrix into a new matrix handle.
 *
 * # Safety
 * `rho` must be a live handle; `out` must be writable.
 */
QtStatus qt_density_matrix(const QtDensity *rho, QtMatrix **out);

/**
 * Diagonal Hamiltonian with the given energies.
 *
 * # Safety
 * `energies` must point to `n` doubles; `out` must be writable.
 */
QtStatus qt_hamiltonian_from_energies(const double *energies, size_t n, QtHamiltonian **out);

/**
 * Hamiltonian from a Hermitian matrix.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
QtStatus qt_hamiltonian_new(const QtMatrix *m, QtHamiltonian **out);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
void qt_hamiltonian_free(QtHamiltonian *h);

/**
 * `Tr(ρH)`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
QtStatus qt_energy(const QtDensity *rho, const QtHamiltonian *h, double *out);

/**
 * Energy, passive energy and ergotropy of `rho` under `h`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
QtStatus qt_ergotropy(const QtDensity *rho, const QtHamiltonian *h, QtWork *out);

/**
 * `½‖a − b‖₁`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
QtStatus qt_trace_distance(const QtDensity *a, const QtDensity *b, double *out);

/**
 * Reduced state on the subsystems listed in `keep`, in their original order.
 *
 * # Safety
 * `dims` must point to `n_dims` values and `keep` to `n_keep`; `rho` must
 * be live and `out` writable.
 */
QtStatus qt_partial_trace(const QtDensity *rho,
                          const size_t *dims,
                          size_t n_dims,
                          const size_t *keep,
                          size_t n_keep,
                          QtDensity **out);

/**
 * Generalized CNOT on `d × d`.
 *
 * # Safety
 * `out` must be writable.
 */
QtStatus qt_energy_cloner(size_t d, QtMatrix **out);

/**
 * Splitter sending fraction `p` of the energy to the system.
 *
 * # Safety
 * `out` must be writable.
 */
QtStatus qt_energy_splitter(size_t d, double p, QtMatrix **out);

/**
 * Masker for energy-diagonal inputs under equally spaced levels.
 *
 * # Safety
 * `out` must be writable.
 */
QtStatus qt_diagonal_work_masker(size_t d, QtMatrix **out);

/**
 * 16×16 four-qubit masker.
 *
 * # Safety
 * `out` must be writable.
 */
QtStatus qt_four_party_masker(QtMatrix **out);

/**
 * Runs the experiment described by a JSON config and returns the JSON
 * report array in `*out`, to be released with [`qt_string_free`]. A `FAIL`
 * verdict is still `QT_STATUS_OK`; inspect the report.
 *
 * # Safety
 * `config_json` must be a NUL-terminated UTF-8 string; `out` must be
 * writable.
 */
QtStatus qt_run_experiment(const char *config_json, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void qt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTHERMO_H */
