/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef INTRANSKIT_H
#define INTRANSKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum IkStatus {
  IK_STATUS_OK = 0,
  IK_STATUS_NULL_POINTER = 1,
  IK_STATUS_INVALID_ARGUMENT = 2,
  IK_STATUS_ANTISYMMETRY_VIOLATION = 3,
  IK_STATUS_NOT_ABSOLUTELY_TRANSITIVE = 4,
  IK_STATUS_NO_CONVERGENCE = 5,
  IK_STATUS_DISCONNECTED_SYSTEM = 6,
  IK_STATUS_STEP_TOO_LARGE = 7,
  IK_STATUS_PARSE_ERROR = 8,
  IK_STATUS_IO_ERROR = 9,
  IK_STATUS_INVALID_CONFIG = 10,
  IK_STATUS_PANIC = 11,
} IkStatus;

// Overall intransitivity class, weakest first.
typedef enum IkTripletClass {
  IK_TRIPLET_CLASS_NONE = 0,
  IK_TRIPLET_CLASS_WEAK = 1,
  IK_TRIPLET_CLASS_SEMI_WEAK = 2,
  IK_TRIPLET_CLASS_SEMI_STRICT = 3,
  IK_TRIPLET_CLASS_STRICT = 4,
} IkTripletClass;

// Opaque co-ranking matrix.
typedef struct IkMatrix IkMatrix;

// Opaque particle simulation.
typedef struct IkSimulation IkSimulation;

// One row of a simulation time series.
typedef struct IkSeriesRow {
  uint64_t step;
  double mean_benefit;
  double mean_risk;
  double omega;
  double inter_step_coranking;
} IkSeriesRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *ik_last_error(void);

// Library version as a static NUL-terminated string.
const char *ik_version(void);

// Builds an `n × n` matrix from row-major `values`, labelled `E1..En`.
// Asymmetries up to `anti_tol` are repaired.
//
// # Safety
// `values` must point to `n * n` doubles; `out` must be writable.
enum IkStatus ik_matrix_new(size_t n, const double *values, double anti_tol, struct IkMatrix **out);

// Reads a CSV matrix file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum IkStatus ik_matrix_from_csv(const char *path, double anti_tol, struct IkMatrix **out);

// Releases a matrix; null is ignored.
//
// # Safety
// `m` must come from this library and not be used afterwards.
void ik_matrix_free(struct IkMatrix *m);

// Number of elements, or 0 for null.
//
// # Safety
// `m` must be null or a live matrix.
size_t ik_matrix_size(const struct IkMatrix *m);

// # Safety
// `m` must be a live matrix; `out` must be writable.
enum IkStatus ik_matrix_get(const struct IkMatrix *m, size_t i, size_t j, double *out);

// Ranking of element `a` conditioned on a weighted group; null `weights`
// means unit weights.
//
// # Safety
// `members` (and `weights` if non-null) must hold `len` entries.
enum IkStatus ik_conditional_ranking(const struct IkMatrix *m,
                                     size_t a,
                                     const size_t *members,
                                     const double *weights,
                                     size_t len,
                                     double *out);

// Co-ranking of group 1 over group 2.
//
// # Safety
// Member and weight arrays must hold `len1` / `len2` entries.
enum IkStatus ik_group_coranking(const struct IkMatrix *m,
                                 const size_t *members1,
                                 const double *weights1,
                                 size_t len1,
                                 const size_t *members2,
                                 const double *weights2,
                                 size_t len2,
                                 double *out);

// Cycle sum of the triplet `(a, b, c)`.
//
// # Safety
// `m` must be a live matrix; `out` must be writable.
enum IkStatus ik_triplet_delta(const struct IkMatrix *m, size_t a, size_t b, size_t c, double *out);

// Strongest intransitivity of the sign pattern (values within `zero_tol`
// of 0 count as indifference).
//
// # Safety
// `m` must be a live matrix; `out` must be writable.
enum IkStatus ik_classify(const struct IkMatrix *m, double zero_tol, enum IkTripletClass *out);

// Closure class of every element (0 = top class) and the class count.
//
// # Safety
// `class_of` must hold `ik_matrix_size(m)` entries.
enum IkStatus ik_transitive_closure(const struct IkMatrix *m,
                                    double zero_tol,
                                    size_t *class_of,
                                    size_t *class_count);

// Primary and secondary current rankings and `Ω`; null `weights` means
// unit weights.
//
// # Safety
// `weights` (if non-null), `r_star` and `r_star_star` must hold
// `ik_matrix_size(m)` entries.
enum IkStatus ik_current_rankings(const struct IkMatrix *m,
                                  const double *weights,
                                  double zero_tol,
                                  double *r_star,
                                  double *r_star_star,
                                  double *omega_out);

// `Ω` alone.
//
// # Safety
// `weights` must be null or hold `ik_matrix_size(m)` entries.
enum IkStatus ik_omega(const struct IkMatrix *m,
                       const double *weights,
                       double zero_tol,
                       double *out);

// Splits `m` into two new matrices, transitive plus intransitive.
//
// # Safety
// Both output pointers must be writable; free the results with
// [`ik_matrix_free`].
enum IkStatus ik_decompose(const struct IkMatrix *m,
                           double delta_tol,
                           struct IkMatrix **transitive,
                           struct IkMatrix **intransitive);

// Absolute ranking anchored at element 0, if every triplet closes within
// `delta_tol`.
//
// # Safety
// `values` must hold `ik_matrix_size(m)` entries.
enum IkStatus ik_absolute_ranking(const struct IkMatrix *m, double delta_tol, double *values);

// Nash equilibrium of the zero-sum game with available sets `s1`, `s2`.
// `p1` / `p2` receive the probability of each listed strategy.
//
// # Safety
// `s1` and `p1` must hold `n1` entries, `s2` and `p2` `n2` entries.
enum IkStatus ik_solve_nash(const struct IkMatrix *m,
                            const size_t *s1,
                            size_t n1,
                            const size_t *s2,
                            size_t n2,
                            double tolerance,
                            uint64_t max_iterations,
                            double *p1,
                            double *p2,
                            double *value);

// Smooth coarsening `ρ₀ · erf(|ρ₀|/ε)^k`.
double ik_gauss_coarsen(double rho0, double epsilon, double k);

// Co-ranking between two distributions over `k` rank levels.
//
// # Safety
// `pa` and `pb` must hold `k` entries.
enum IkStatus ik_rank_dist_coranking(const double *pa, const double *pb, size_t k, double *out);

// One Euler step of the density equation.
//
// # Safety
// `f` and `f_next` must hold `ik_matrix_size(m)` entries; they may alias.
enum IkStatus ik_density_step(const struct IkMatrix *m,
                              const double *f,
                              double lambda,
                              double dt,
                              double *f_next);

// New particle simulation from a JSON configuration (null for defaults).
//
// # Safety
// `config_json` must be null or NUL-terminated; `out` must be writable.
enum IkStatus ik_simulation_new(const char *config_json, struct IkSimulation **out);

// Advances one step and reports the new series row.
//
// # Safety
// `sim` must be a live simulation; `row` must be writable.
enum IkStatus ik_simulation_step(struct IkSimulation *sim, struct IkSeriesRow *row);

// Releases a simulation; null is ignored.
//
// # Safety
// `sim` must come from this library and not be used afterwards.
void ik_simulation_free(struct IkSimulation *sim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTRANSKIT_H */
