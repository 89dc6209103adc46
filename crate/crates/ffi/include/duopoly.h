#ifndef DUOPOLY_H
#define DUOPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Solution method selector shared by the Cournot and Hotelling solvers.
 */
typedef enum DuopolyMethod {
  DUOPOLY_METHOD_CLOSED_FORM = 0,
  /**
   * Best-response iteration.
   */
  DUOPOLY_METHOD_NUMERIC = 1,
} DuopolyMethod;

typedef enum DuopolyStatus {
  DUOPOLY_STATUS_OK = 0,
  DUOPOLY_STATUS_NULL_POINTER = 1,
  DUOPOLY_STATUS_INVALID_INPUT = 2,
  DUOPOLY_STATUS_INVALID_LOCATIONS = 3,
  DUOPOLY_STATUS_OUT_OF_INTERIOR = 4,
  DUOPOLY_STATUS_NON_CONVERGENCE = 5,
  DUOPOLY_STATUS_STEP_TOO_LARGE = 6,
  DUOPOLY_STATUS_SEARCH_FAILURE = 7,
  DUOPOLY_STATUS_NOT_TWO_BY_TWO = 8,
  DUOPOLY_STATUS_AMBIGUOUS_EQUILIBRIUM = 9,
  DUOPOLY_STATUS_TRAJECTORY_TOO_SHORT = 10,
  DUOPOLY_STATUS_PARSE = 11,
  DUOPOLY_STATUS_IO = 12,
  DUOPOLY_STATUS_INDEX_OUT_OF_RANGE = 13,
  DUOPOLY_STATUS_UTF8 = 14,
} DuopolyStatus;

/**
 * Opaque bimatrix game.
 */
typedef struct DuopolyGame DuopolyGame;

/**
 * Opaque simulation result.
 */
typedef struct DuopolyTrajectory DuopolyTrajectory;

typedef struct DuopolyCournotOutcome {
  double q_a;
  double q_b;
  double price;
  double profit_a;
  double profit_b;
} DuopolyCournotOutcome;

typedef struct DuopolyHotellingOutcome {
  double p_a;
  double p_b;
  double x;
  double y;
  double demand_a;
  double demand_b;
  double profit_a;
  double profit_b;
  double e_share;
} DuopolyHotellingOutcome;

/**
 * A strategy profile by row/column index, with its payoffs.
 */
typedef struct DuopolyProfile {
  size_t row;
  size_t col;
  double row_payoff;
  double col_payoff;
} DuopolyProfile;

typedef struct DuopolyPdResult {
  bool is_prisoners_dilemma;
  /**
   * Only meaningful when `is_prisoners_dilemma` is true.
   */
  struct DuopolyProfile equilibrium;
  struct DuopolyProfile dominated_by;
} DuopolyPdResult;

typedef struct DuopolyCycleRecord {
  size_t t;
  double tech_factor;
  double unit_cost;
  double phase1_profit_a;
  double phase1_profit_b;
  bool innovates_a;
  bool innovates_b;
  double phase2_gross_a;
  double phase2_gross_b;
  double cost_paid_a;
  double cost_paid_b;
  double net_profit_a;
  double net_profit_b;
  double differentiation;
} DuopolyCycleRecord;

typedef struct DuopolyDecompositionStep {
  size_t from;
  size_t to;
  double d_t;
  double d_c;
  double d_d;
} DuopolyDecompositionStep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *duopoly_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from a `duopoly_*` function returning `char *`, or be NULL.
 */
void duopoly_string_free(char *s);

/**
 * # Safety
 * `out` must be NULL or point to writable memory for one `double`.
 */
enum DuopolyStatus duopoly_cournot_best_response(double cap, double q_rival, double *out);

/**
 * # Safety
 * `profit_a` and `profit_b` must be NULL or writable.
 */
enum DuopolyStatus duopoly_cournot_profits(double cap,
                                           double q_a,
                                           double q_b,
                                           double *profit_a,
                                           double *profit_b);

/**
 * # Safety
 * `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_cournot_equilibrium(double cap,
                                               enum DuopolyMethod method,
                                               struct DuopolyCournotOutcome *out);

/**
 * Distances from each firm to the indifferent consumer.
 *
 * # Safety
 * `x` and `y` must be NULL or writable.
 */
enum DuopolyStatus duopoly_hotelling_split(double length,
                                           double disutility,
                                           double loc_a,
                                           double loc_b,
                                           double p_a,
                                           double p_b,
                                           double *x,
                                           double *y);

/**
 * # Safety
 * `profit_a` and `profit_b` must be NULL or writable.
 */
enum DuopolyStatus duopoly_hotelling_stage_profits(double length,
                                                   double disutility,
                                                   double loc_a,
                                                   double loc_b,
                                                   double p_a,
                                                   double p_b,
                                                   double *profit_a,
                                                   double *profit_b);

/**
 * # Safety
 * `p_a` and `p_b` must be NULL or writable.
 */
enum DuopolyStatus duopoly_hotelling_price_equilibrium(double length,
                                                       double disutility,
                                                       double loc_a,
                                                       double loc_b,
                                                       enum DuopolyMethod method,
                                                       double *p_a,
                                                       double *p_b);

/**
 * # Safety
 * `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_hotelling_equilibrium_outcome(double length,
                                                         double disutility,
                                                         double loc_a,
                                                         double loc_b,
                                                         struct DuopolyHotellingOutcome *out);

/**
 * Finite-difference derivative of each firm's equilibrium profit in its own
 * location. A `step` of zero or less selects the default `1e-5 * length`.
 *
 * # Safety
 * `grad_a` and `grad_b` must be NULL or writable.
 */
enum DuopolyStatus duopoly_hotelling_location_gradient(double length,
                                                       double disutility,
                                                       double loc_a,
                                                       double loc_b,
                                                       double step,
                                                       double *grad_a,
                                                       double *grad_b);

/**
 * # Safety
 * `f` and `de_dloc_a` must be NULL or writable.
 */
enum DuopolyStatus duopoly_hotelling_diagnostics(double length,
                                                 double disutility,
                                                 double loc_a,
                                                 double loc_b,
                                                 double *f,
                                                 double *de_dloc_a);

/**
 * Minimized Cobb-Douglas cost of one unit of output.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_unit_cost(double v, double w, double alpha, double *out);

/**
 * `q * unit_cost / tech_factor`.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_total_cost(double v,
                                      double w,
                                      double alpha,
                                      double q,
                                      double tech_factor,
                                      double *out);

/**
 * Parses a game from its text form. Release with [`duopoly_game_free`].
 *
 * # Safety
 * `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_game_parse(const char *text, struct DuopolyGame **out);

/**
 * Loads a game file. Release with [`duopoly_game_free`].
 *
 * # Safety
 * `path` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_game_load(const char *path, struct DuopolyGame **out);

/**
 * # Safety
 * `game` must be NULL or a handle from `duopoly_game_parse`/`duopoly_game_load`
 * that has not been freed.
 */
void duopoly_game_free(struct DuopolyGame *game);

/**
 * Number of pure Nash equilibria, or 0 for a NULL handle.
 *
 * # Safety
 * `game` must be NULL or a live handle.
 */
size_t duopoly_game_nash_count(const struct DuopolyGame *game);

/**
 * The `index`-th pure Nash equilibrium in row-major order.
 *
 * # Safety
 * `game` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_game_nash_at(const struct DuopolyGame *game,
                                        size_t index,
                                        struct DuopolyProfile *out);

/**
 * Strictly dominant strategy indices; -1 where a player has none.
 *
 * # Safety
 * `game` must be NULL or a live handle; `row` and `col` must be NULL or writable.
 */
enum DuopolyStatus duopoly_game_dominant(const struct DuopolyGame *game,
                                         int64_t *row,
                                         int64_t *col);

/**
 * # Safety
 * `game` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_game_classify_pd(const struct DuopolyGame *game,
                                            struct DuopolyPdResult *out);

/**
 * Runs the periodic game described by a TOML config file. Release with
 * [`duopoly_trajectory_free`].
 *
 * # Safety
 * `config_path` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_simulate(const char *config_path, struct DuopolyTrajectory **out);

/**
 * # Safety
 * `traj` must be NULL or a live handle from [`duopoly_simulate`].
 */
void duopoly_trajectory_free(struct DuopolyTrajectory *traj);

/**
 * # Safety
 * `traj` must be NULL or a live handle.
 */
size_t duopoly_trajectory_len(const struct DuopolyTrajectory *traj);

/**
 * # Safety
 * `traj` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_trajectory_record(const struct DuopolyTrajectory *traj,
                                             size_t index,
                                             struct DuopolyCycleRecord *out);

/**
 * Step `index` of the `dT = -dC + dD` decomposition (there are `len - 1` steps).
 *
 * # Safety
 * `traj` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum DuopolyStatus duopoly_trajectory_step(const struct DuopolyTrajectory *traj,
                                           size_t index,
                                           struct DuopolyDecompositionStep *out);

/**
 * The trajectory as JSON, or NULL on failure. Release with [`duopoly_string_free`].
 *
 * # Safety
 * `traj` must be NULL or a live handle.
 */
char *duopoly_trajectory_to_json(const struct DuopolyTrajectory *traj);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUOPOLY_H */
