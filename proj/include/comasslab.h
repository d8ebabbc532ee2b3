/* comasslab — C interface to the exterior-algebra comass laboratory.
 *
 * Conventions:
 *   - Every function that can fail returns cml_status; CML_OK is 0.
 *   - On failure, cml_last_error() returns a thread-local message describing
 *     the most recent error on the calling thread.
 *   - Out-parameters are written only on CML_OK.
 *   - Objects returned through cml_*_free-able handles are owned by the
 *     caller; strings returned through char** must be released with
 *     cml_string_free.
 */
#ifndef COMASSLAB_H
#define COMASSLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cml_status {
  CML_OK = 0,
  CML_ERROR_INVALID_ARGUMENT = 1,
  CML_ERROR_DIMENSION_MISMATCH = 2,
  CML_ERROR_DEGREE_OVERFLOW = 3,
  CML_ERROR_UNSUPPORTED_DEGREE = 4,
  CML_ERROR_PARSE = 5,
  CML_ERROR_OVERFLOW = 6,
  CML_ERROR_INTERNAL = 7
} cml_status;

const char* cml_version(void);
/* Message for the most recent failure on this thread; never NULL. */
const char* cml_last_error(void);
void cml_string_free(char* s);

/* ---------- covectors ---------- */

typedef struct cml_covector cml_covector;

/* Parse {"n":..,"p":..,"terms":[{"index":[..],"coeff":..},..]}. */
cml_status cml_covector_from_json(const char* json_text, cml_covector** out);
/* indices: nterms*p ints, term-major, each term strictly increasing, 1-based. */
cml_status cml_covector_from_terms(int n, int p, size_t nterms, const int* indices,
                                   const double* coeffs, cml_covector** out);
cml_status cml_covector_to_json(const cml_covector* cv, char** json_out);
cml_status cml_covector_dims(const cml_covector* cv, int* n_out, int* p_out);
cml_status cml_covector_term_count(const cml_covector* cv, size_t* count_out);
/* 1 when both non-NULL and exactly equal (same n, p, coefficient map). */
int cml_covector_equal(const cml_covector* a, const cml_covector* b);
void cml_covector_free(cml_covector* cv);

cml_status cml_wedge(const cml_covector* a, const cml_covector* b, cml_covector** out);
cml_status cml_hodge_star(const cml_covector* a, cml_covector** out);
cml_status cml_euclidean_norm(const cml_covector* a, double* out);

/* ---------- frames ---------- */

typedef struct cml_frame cml_frame;

cml_status cml_frame_random(int n, int p, uint64_t seed, cml_frame** out);
/* data: n*p doubles, column-major; columns must be orthonormal to 1e-10. */
cml_status cml_frame_from_data(int n, int p, const double* data, cml_frame** out);
cml_status cml_frame_dims(const cml_frame* f, int* n_out, int* p_out);
/* data_out must hold n*p doubles; written column-major. */
cml_status cml_frame_data(const cml_frame* f, double* data_out);
void cml_frame_free(cml_frame* f);

cml_status cml_evaluate_on_frame(const cml_covector* a, const cml_frame* f, double* out);
/* Multilinear extension to an arbitrary column-major n x p matrix. */
cml_status cml_evaluate_raw(const cml_covector* a, int n, int p, const double* data, double* out);
/* Euclidean gradient of cml_evaluate_raw; grad_out holds n*p doubles, column-major. */
cml_status cml_gradient_raw(const cml_covector* a, int n, int p, const double* data,
                            double* grad_out);

/* ---------- calibration forms ---------- */

cml_status cml_form_special_lagrangian(const double mu[4], cml_covector** out);
/* 1 iff mu1^2+mu2^2+mu3^2+mu4^2+2 mu1 mu2 mu3 <= 1 (comass-1 criterion). */
int cml_dadok_harvey_check(const double mu[4]);
/* 1 iff 1 >= mu1 >= mu2 >= |mu3| and mu1^2 + mu4^2 <= 1. */
int cml_special_lagrangian_canonical(const double mu[4]);
cml_status cml_form_symplectic_power(int k, int n, cml_covector** out);
cml_status cml_form_cayley(cml_covector** out);
cml_status cml_form_random(int n, int p, int terms, uint64_t seed, cml_covector** out);

/* ---------- comass ---------- */

typedef struct cml_optimizer_config {
  int restarts;
  int max_iter;
  double grad_tol;
  double step_tol;
  double armijo_c1;
  double tie_tol;
  uint64_t seed;
  int threads;
} cml_optimizer_config;

/* Fill with the library defaults (64 restarts, 500 iterations, ...). */
void cml_optimizer_config_init(cml_optimizer_config* cfg);

typedef struct cml_estimate {
  double lower_bound;        /* certified: exact evaluation on the witness */
  double euclidean_norm;
  double ratio;              /* euclidean_norm / lower_bound (inf/nan if degenerate) */
  int restarts_used;
  long long iterations;
  double converged_fraction;
} cml_estimate;

/* cfg NULL means defaults. witness_out may be NULL when the frame is not needed. */
cml_status cml_comass_estimate(const cml_covector* a, const cml_optimizer_config* cfg,
                               cml_estimate* out, cml_frame** witness_out);
/* Closed forms: p in {0, 1, 2, n-1, n}. */
cml_status cml_comass_exact(const cml_covector* a, double* out);
cml_status cml_ratio_estimate(const cml_covector* a, const cml_optimizer_config* cfg,
                              double* out);

/* ---------- bound table ---------- */

typedef struct cml_bound_table cml_bound_table;

cml_status cml_bound_table_build(int n_max, cml_bound_table** out);
cml_status cml_bound_table_n_max(const cml_bound_table* t, int* out);
cml_status cml_bound_table_upper(const cml_bound_table* t, int n, int p, double* out);
cml_status cml_bound_table_upper_rational(const cml_bound_table* t, int n, int p,
                                          int64_t* num_out, int64_t* den_out);
/* has_exact_out gets 0/1; num/den written only when exact. */
cml_status cml_bound_table_exact_rational(const cml_bound_table* t, int n, int p,
                                          int* has_exact_out, int64_t* num_out,
                                          int64_t* den_out);
/* "+"-joined rule tags for the cell, e.g. "KRULE(1)". */
cml_status cml_bound_table_provenance(const cml_bound_table* t, int n, int p, char** out);
cml_status cml_bound_table_to_csv(const cml_bound_table* t, char** out);
cml_status cml_bound_table_to_json(const cml_bound_table* t, char** out);
/* 1 if one more rule pass leaves every cell unchanged, else 0. */
cml_status cml_bound_table_is_fixed_point(const cml_bound_table* t, int* out);
void cml_bound_table_free(cml_bound_table* t);

typedef struct cml_search_config {
  int budget;
  double delta0;
  double decay;
  uint64_t seed;
  cml_optimizer_config inner;
  cml_optimizer_config final_eval;
} cml_search_config;

void cml_search_config_init(cml_search_config* cfg);

/* Hill-climb the Euclidean/comass ratio over p-covectors in R^n. init may be
 * NULL (random dense start); witness_out may be NULL. */
cml_status cml_lower_bound_search(int n, int p, const cml_search_config* cfg,
                                  const cml_covector* init, double* ratio_out,
                                  cml_covector** witness_out);

/* ---------- wedge-product bound checks ---------- */

typedef enum cml_check_status {
  CML_CHECK_PASS = 0,
  CML_CHECK_RETRY = 1,
  CML_CHECK_FAIL = 2
} cml_check_status;

typedef struct cml_wedge_report {
  double lhs;
  double rhs;
  double constant_used;
  double margin; /* rhs - lhs */
  cml_check_status status;
} cml_wedge_report;

/* cfg NULL means defaults (64 restarts; tolerance 1e-6; retry factor 10). */
cml_status cml_check_complementary(const cml_covector* a, const cml_covector* b,
                                   const cml_optimizer_config* cfg, cml_wedge_report* out);
cml_status cml_check_general(const cml_covector* a, const cml_covector* b,
                             const cml_optimizer_config* cfg, cml_wedge_report* out);
cml_status cml_check_m_fold(const cml_covector* const* forms, size_t m,
                            const cml_optimizer_config* cfg, cml_wedge_report* out);

/* ---------- systolic constants ---------- */

typedef enum cml_gamma_source {
  CML_GAMMA_EXACT_B1 = 0,
  CML_GAMMA_HERMITE_LINEAR = 1
} cml_gamma_source;

cml_status cml_gamma_bound(int b, double* value_out, cml_gamma_source* source_out);

typedef struct cml_systolic_result {
  double constant;
  double c_part;
  double gamma_part;
  int64_t constant_num; /* the constant as an exact rational */
  int64_t constant_den;
  int c_exact; /* 1 when every table cell used is exactly known */
  cml_gamma_source gamma_source;
} cml_systolic_result;

/* mfold == 0: complementary mode at (n, p). mfold >= 2: m-fold mode, n == mfold*p.
 * source_tags_out (optional, may be NULL): ";"-joined provenance tags for the
 * table cells and the gamma surrogate; release with cml_string_free. */
cml_status cml_systolic_constant(int n, int p, int b, int mfold, cml_systolic_result* out,
                                 char** source_tags_out);
/* (stsys_2 * stsys_{2m-2} / vol) / m under the symbolic equality-case values;
 * exactly 1 for every valid m. */
cml_status cml_cpm_equality_check(int m, double* out);

#ifdef __cplusplus
}
#endif

#endif /* COMASSLAB_H */
