#ifndef CLDEFORM_H
#define CLDEFORM_H

/* C interface to the deformed noncommutative-torus library.
   Every call returns a cld_status; on failure cld_last_error() holds a message
   for the calling thread. Strings handed out by the library are released with
   cld_string_free, handles with their matching _free. */

#include <stddef.h>

#if defined(CLD_BUILDING)
#define CLD_API __attribute__((visibility("default")))
#else
#define CLD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cld_status {
  CLD_OK = 0,
  CLD_INVALID_ARGUMENT = 1,
  CLD_WINDOW_EXHAUSTED = 2,
  CLD_NOT_CONVERGED = 3,
  CLD_NOT_PROJECTION = 4,
  CLD_UNSUPPORTED = 5,
  CLD_PARSE_ERROR = 6,
  CLD_IO_ERROR = 7,
  CLD_INTERNAL = 99
} cld_status;

/* d x d matrix of finitely supported graded elements; d = 1 is a plain element. */
typedef struct cld_element cld_element;

/* Pairing settings plus the degree-2 Chern constant once calibrated. */
typedef struct cld_pairing_context cld_pairing_context;

CLD_API const char* cld_version(void);
CLD_API const char* cld_last_error(void);
CLD_API void cld_string_free(char* s);

/* ---- elements */

/* Accepts {"cutoff", "terms"} for d = 1 and {"dim", "entries"} otherwise. */
CLD_API cld_status cld_element_from_json(const char* json, cld_element** out);
CLD_API cld_status cld_element_read_file(const char* path, cld_element** out);
/* Plain element format when d = 1. */
CLD_API cld_status cld_element_to_json(const cld_element* a, char** out);
CLD_API cld_status cld_element_write_file(const cld_element* a, const char* path);
CLD_API cld_status cld_element_monomial(int m, int n, double re, double im, cld_element** out);
CLD_API cld_status cld_element_identity(int dim, cld_element** out);
CLD_API void cld_element_free(cld_element* a);
CLD_API int cld_element_dim(const cld_element* a);

CLD_API cld_status cld_product(const cld_element* a, const cld_element* b, double theta,
                               cld_element** out);
CLD_API cld_status cld_star(const cld_element* a, cld_element** out);
CLD_API cld_status cld_distance(const cld_element* a, const cld_element* b, double* out);
/* tau of the matrix trace */
CLD_API cld_status cld_trace(const cld_element* a, double* re, double* im);
/* standard normalization when literal == 0 */
CLD_API cld_status cld_fejer(const cld_element* a, int k, int literal, cld_element** out);
CLD_API cld_status cld_phase_factor(double theta, int m, int n, int m2, int n2, double* re,
                                    double* im);

/* ---- projections */

CLD_API cld_status cld_powers_rieffel(double theta, int fourier_cutoff, cld_element** out);
CLD_API cld_status cld_bott(int fourier_cutoff, cld_element** out);
/* *pass = 1 when both defects are within tol */
CLD_API cld_status cld_verify_projection(const cld_element* p, double theta, double tol,
                                         double* idempotency, double* adjoint, int* pass);

/* ---- pairings */

typedef struct cld_pairing_options {
  int cutoff;             /* operator truncation N */
  int margin;             /* graded trace radius N - margin */
  int extrapolate;        /* remove the 1/R^2 tail */
  int index_cutoff;       /* truncation for the index oracle */
  int calibration_cutoff; /* truncation used to calibrate against Bott */
  int bott_cutoff;        /* Fourier cutoff of the Bott projection */
} cld_pairing_options;

CLD_API void cld_pairing_options_default(cld_pairing_options* opt);
CLD_API cld_status cld_pairing_context_new(const cld_pairing_options* opt,
                                           cld_pairing_context** out);
CLD_API void cld_pairing_context_free(cld_pairing_context* ctx);
/* Runs once per context; cld_pair calls it on demand for ch-type cocycles. */
CLD_API cld_status cld_pairing_calibrate(cld_pairing_context* ctx, double* kappa);
/* cocycle spec such as "tau", "ch2", "i1:i2:tau"; report is JSON */
CLD_API cld_status cld_pair(cld_pairing_context* ctx, const cld_element* p, const char* cocycle,
                            double theta, char** report);
/* tau + i1 i2 tau / (2 pi i) */
CLD_API cld_status cld_pair_combined(cld_pairing_context* ctx, const cld_element* p,
                                     double theta, char** report);
CLD_API cld_status cld_index(const cld_pairing_context* ctx, const cld_element* p, double theta,
                             char** report);

/* ---- acceptance suite */

/* JSON config, NULL for defaults; *all_pass = 1 when nothing failed */
CLD_API cld_status cld_suite_default_config(char** out);
CLD_API cld_status cld_run_suite(const char* config, char** report, int* all_pass);
CLD_API cld_status cld_suite_check_ids(char** out);

#ifdef __cplusplus
}
#endif

#endif
