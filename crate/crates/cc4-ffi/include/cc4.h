#ifndef CC4_H
#define CC4_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum Cc4Status {
  Cc4Status_Ok = 0,
  Cc4Status_InvalidInput = 1,
  Cc4Status_DegenerateDenominator = 2,
  Cc4Status_InfeasibleMass = 3,
  Cc4Status_InfeasibleShape = 4,
  Cc4Status_CollisionDetected = 5,
  Cc4Status_SingularSystem = 6,
  Cc4Status_RootNotBracketed = 7,
  Cc4Status_LabelAbsent = 8,
  Cc4Status_NullPointer = 9,
  Cc4Status_Panic = 10,
} Cc4Status;

/**
 * Region labels as stable integers.
 */
typedef enum Cc4Region {
  Cc4Region_A = 0,
  Cc4Region_B = 1,
  Cc4Region_C = 2,
  Cc4Region_D = 3,
  Cc4Region_Boundary = 4,
  Cc4Region_Infeasible = 5,
  Cc4Region_Invalid = 6,
} Cc4Region;

/**
 * Opaque raster handle produced by `cc4_scan_new`.
 */
typedef struct Cc4Raster Cc4Raster;

/**
 * The five discriminants and their classified signs.
 */
typedef struct Cc4SignProfile {
  double p[5];
  int8_t sign[5];
} Cc4SignProfile;

/**
 * Closed-form mass solution at a shape point.
 */
typedef struct Cc4MassSolution {
  double m1;
  double m2;
  double m3;
  double m4;
  double lambda;
  double c_y;
  bool feasible;
  struct Cc4SignProfile profile;
} Cc4MassSolution;

/**
 * Newtonian residual report for a four-body configuration.
 */
typedef struct Cc4Residual {
  double lambda_est;
  double max_residual;
  double per_body[4];
  double lambda_ui;
  bool is_central;
} Cc4Residual;

/**
 * Conservation drift summary for a relative-equilibrium run.
 */
typedef struct Cc4Drifts {
  double energy;
  double angular_momentum;
  double max_distance;
} Cc4Drifts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default sign tolerance used when `eps_sign <= 0` is passed.
 */
double cc4_default_eps_sign(void);

/**
 * Evaluate the five discriminants at (s, t).
 */
enum Cc4Status cc4_sign_profile(double s, double t, double eps_sign, struct Cc4SignProfile *out);

/**
 * Closed-form masses at (s, t) and lambda.
 */
enum Cc4Status cc4_solve(double s,
                         double t,
                         double lambda,
                         double eps_sign,
                         struct Cc4MassSolution *out);

/**
 * Independent linear-solve oracle; out receives (m2, m3, m4, eq2 residual).
 */
enum Cc4Status cc4_solve_reduced(double s, double t, double lambda, double (*out)[4]);

/**
 * The q4-centered special case; out receives (m1..m4, lambda, s, t).
 */
enum Cc4Status cc4_special(double lambda, double m2, double (*out)[7]);

/**
 * Lambda reaching a target m4 in the special case.
 */
enum Cc4Status cc4_lambda_for_m4(double m2, double m4_target, double *out);

/**
 * Region label of a point of the (s, t) plane. Never fails: invalid
 * geometry maps to `Cc4Region::Invalid`.
 */
enum Cc4Region cc4_classify(double s, double t, double eps_sign);

/**
 * Newtonian residual check of an arbitrary four-body configuration.
 * `positions` is x1,y1,...,x4,y4.
 */
enum Cc4Status cc4_residual(const double (*positions)[8],
                            const double (*masses)[4],
                            double tol,
                            struct Cc4Residual *out);

/**
 * The common zero of p1, p2 and p4.
 */
enum Cc4Status cc4_triple_intersection(double *out_s, double *out_t);

/**
 * The t > s solving p2 = 0 at fixed s (exists for s < sqrt(3)).
 */
enum Cc4Status cc4_p2_curve_t(double s, double *out_t);

/**
 * Relative-equilibrium run; drifts are maximum relative deviations over
 * `n_steps` steps of size `dt`.
 */
enum Cc4Status cc4_simulate(double s,
                            double t,
                            double lambda,
                            double dt,
                            uintptr_t n_steps,
                            struct Cc4Drifts *out);

/**
 * Scan a raster of the (s, t) plane. On success the handle must be freed
 * with `cc4_raster_free`.
 */
enum Cc4Status cc4_scan_new(double s_min,
                            double s_max,
                            double t_min,
                            double t_max,
                            uintptr_t res_s,
                            uintptr_t res_t,
                            double lambda,
                            double eps_sign,
                            struct Cc4Raster **out);

/**
 * Label of cell (i, j); i indexes s, j indexes t.
 */
enum Cc4Status cc4_raster_label(const struct Cc4Raster *raster,
                                uintptr_t i,
                                uintptr_t j,
                                enum Cc4Region *out);

/**
 * Mass solution of cell (i, j), when the closed forms are defined there.
 */
enum Cc4Status cc4_raster_solution(const struct Cc4Raster *raster,
                                   uintptr_t i,
                                   uintptr_t j,
                                   struct Cc4MassSolution *out);

/**
 * Number of 4-connected components carrying `label`.
 */
enum Cc4Status cc4_raster_component_count(const struct Cc4Raster *raster,
                                          enum Cc4Region label,
                                          uintptr_t *out);

/**
 * Release a raster handle. Passing null is a no-op.
 */
void cc4_raster_free(struct Cc4Raster *raster);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CC4_H */
