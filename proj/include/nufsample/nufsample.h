/* C interface to libnufsample: nonuniform Fourier sampling schemes, density compensation
 * weights, frame bounds and weighted least-squares reconstruction.
 *
 * Every function returns a nufs_status. On failure nufs_last_error() holds a message for the
 * calling thread. Complex arrays are interleaved (re, im) doubles. Objects are opaque handles
 * released with the matching *_free function.
 */
#ifndef NUFSAMPLE_H
#define NUFSAMPLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(NUFS_BUILDING_LIBRARY)
#define NUFS_API __attribute__((visibility("default")))
#else
#define NUFS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nufs_status
{
  NUFS_OK = 0,
  NUFS_ERR_INTERNAL = 1,
  NUFS_ERR_VALIDATION = 2,
  NUFS_ERR_RESOURCE = 3,
  NUFS_ERR_NUMERICAL = 4,
  NUFS_ERR_IO = 5
} nufs_status;

#define NUFS_MAX_DIM 8

typedef enum nufs_domain_kind
{
  NUFS_DOMAIN_SQUARE = 0,
  NUFS_DOMAIN_BALL = 1,
  NUFS_DOMAIN_SPIRAL = 2
} nufs_domain_kind;

typedef struct nufs_domain
{
  nufs_domain_kind kind;
  int dim;
  double K;  /* bandwidth; r * turns for spiral regions */
  double r;  /* spiral turn separation */
  int turns; /* spiral turn count */
} nufs_domain;

/* l^p norm; p = INFINITY selects the max norm. scales are used when has_scales != 0. */
typedef struct nufs_norm
{
  double p;
  int dim;
  int has_scales;
  double scales[NUFS_MAX_DIM];
} nufs_norm;

typedef enum nufs_support_shape
{
  NUFS_SUPPORT_RECTANGLE = 0,
  NUFS_SUPPORT_LP_BALL = 1
} nufs_support_shape;

typedef struct nufs_support
{
  nufs_support_shape shape;
  int dim;
  double p;      /* lp ball */
  double radius; /* lp ball */
  double half_widths[NUFS_MAX_DIM];
} nufs_support;

typedef struct nufs_support_constants
{
  double m_E;      /* Euclidean radius of E */
  double c_circ;   /* |y|_2 <= c_circ |y|_{E polar} */
  nufs_norm polar; /* norm of the polar body */
} nufs_support_constants;

typedef enum nufs_space_kind
{
  NUFS_SPACE_PIXEL = 0,
  NUFS_SPACE_TRIG = 1
} nufs_space_kind;

typedef struct nufs_space
{
  nufs_space_kind kind;
  int M;
  int dim;
} nufs_space;

typedef struct nufs_density_report
{
  double delta_lower;
  double delta_upper;
  int grid_n;
  uint64_t evaluated;
  int refine_levels;
} nufs_density_report;

typedef struct nufs_frame_report
{
  double delta;
  double m_E;
  double c_star;
  int dim;
  double threshold;
  double sqrtA_lower;
  double sqrtB_upper;
  double B_upper;
  int admissible;
} nufs_frame_report;

typedef enum nufs_method
{
  NUFS_METHOD_CG = 0,
  NUFS_METHOD_GRIDDING = 1
} nufs_method;

typedef struct nufs_solve_report
{
  int iterations;
  double final_residual;
  int converged;
} nufs_solve_report;

typedef struct nufs_scheme nufs_scheme;
typedef struct nufs_weighted nufs_weighted;
typedef struct nufs_function nufs_function;

NUFS_API const char *nufs_version(void);
NUFS_API const char *nufs_last_error(void);
NUFS_API nufs_status nufs_set_threads(int n);
NUFS_API int nufs_get_threads(void);

/* geometry */
NUFS_API nufs_status nufs_norm_lp(double p, int dim, nufs_norm *out);
NUFS_API nufs_status nufs_equivalence_constants(const nufs_norm *norm, double *c_lower, double *c_upper);
NUFS_API nufs_status nufs_support_info(const nufs_support *E, nufs_support_constants *out);
NUFS_API nufs_status nufs_domain_contains(const nufs_domain *Y, const double *point, int *inside);

/* schemes */
NUFS_API nufs_status nufs_scheme_jittered(double K, double eps, double eta, uint64_t seed, nufs_scheme **out);
NUFS_API nufs_status nufs_scheme_jittered_alternating(double K, double eps, double eta, nufs_scheme **out);
NUFS_API nufs_status nufs_scheme_polar(double K, double r, int lines, nufs_scheme **out);
NUFS_API nufs_status nufs_scheme_spiral(double K, double r, double D, nufs_scheme **out);
NUFS_API nufs_status nufs_scheme_from_points(int dim, const double *coords, size_t count, const nufs_domain *Y,
                                             nufs_scheme **out);
NUFS_API nufs_status nufs_scheme_read(const char *csv_path, nufs_scheme **out);
/* Writes the CSV and the JSON sidecar (csv_path + ".json"). */
NUFS_API nufs_status nufs_scheme_write(const nufs_scheme *s, const char *csv_path);
NUFS_API void nufs_scheme_free(nufs_scheme *s);
NUFS_API size_t nufs_scheme_size(const nufs_scheme *s);
NUFS_API int nufs_scheme_dim(const nufs_scheme *s);
NUFS_API nufs_status nufs_scheme_domain(const nufs_scheme *s, nufs_domain *out);
/* Copies size * dim coordinates; capacity counts doubles. */
NUFS_API nufs_status nufs_scheme_points(const nufs_scheme *s, double *coords, size_t capacity);

NUFS_API nufs_status nufs_polar_max_angle(double K, double r, double D, double *out);
NUFS_API nufs_status nufs_spiral_line_count(double K, double r, double D, int *out);

NUFS_API nufs_status nufs_density(const nufs_scheme *s, const nufs_norm *norm, int grid_n, nufs_density_report *out);
NUFS_API nufs_status nufs_density_refined(const nufs_scheme *s, const nufs_norm *norm, int grid_n,
                                          double target_width, nufs_density_report *out);

/* weights */
NUFS_API nufs_status nufs_weights_voronoi(const nufs_scheme *s, const nufs_norm *norm, int grid_n,
                                          nufs_weighted **out);
NUFS_API nufs_status nufs_weights_1d(const nufs_scheme *s, nufs_weighted **out);
NUFS_API nufs_status nufs_weights_unit(const nufs_scheme *s, nufs_weighted **out);
NUFS_API nufs_status nufs_weights_from_values(const nufs_scheme *s, const double *weights, size_t count,
                                              nufs_weighted **out);
NUFS_API void nufs_weighted_free(nufs_weighted *w);
NUFS_API size_t nufs_weighted_size(const nufs_weighted *w);
NUFS_API nufs_status nufs_weighted_values(const nufs_weighted *w, double *weights, size_t capacity);
NUFS_API nufs_status nufs_weighted_quantization(const nufs_weighted *w, uint64_t *domain_cells, double *cell_measure,
                                                double *domain_measure, size_t *zero_weight_count);
NUFS_API nufs_status nufs_weighted_write(const nufs_weighted *w, const char *csv_path);
/* Weighted CSV paired with the scheme it was computed for; the points must match exactly. */
NUFS_API nufs_status nufs_weighted_read(const char *weighted_csv, const nufs_scheme *s, nufs_weighted **out);

/* frame bounds */
NUFS_API nufs_status nufs_frame_bounds_explicit(double delta, double m_E, double c_star, nufs_frame_report *out);
NUFS_API nufs_status nufs_frame_bounds_grochenig(double delta, int dim, nufs_frame_report *out);
NUFS_API nufs_status nufs_sharp_regime_upper_bound(double m_E, double c_circ, double *out);
NUFS_API nufs_status nufs_reconstruction_constant_bound(double delta, double m_E, double c_star, double epsilon,
                                                        double *out);
NUFS_API nufs_status nufs_frame_ratio(const nufs_weighted *w, const nufs_space *space, double *C1, double *C2);

/* test functions */
NUFS_API nufs_status nufs_function_separable_trig(double a, double b, int dim, nufs_function **out);
NUFS_API nufs_status nufs_function_indicator(int dim, const double *lo, const double *hi, nufs_function **out);
NUFS_API nufs_status nufs_function_pixel_image(int M, int dim, const double *values, nufs_function **out);
/* Square 16-bit PGM scaled to [0, 1]; the top row is the largest y. */
NUFS_API nufs_status nufs_function_from_pgm(const char *path, nufs_function **out);
NUFS_API void nufs_function_free(nufs_function *f);
NUFS_API nufs_status nufs_function_l2_norm(const nufs_function *f, double *out);
/* f^ at every scheme point; capacity counts doubles (2 per sample). */
NUFS_API nufs_status nufs_sample(const nufs_function *f, const nufs_scheme *s, double *samples, size_t capacity);

/* reconstruction; coefficient arrays hold 2 * M^d doubles */
NUFS_API nufs_status nufs_reconstruct(const nufs_weighted *w, const nufs_space *space, const double *samples,
                                      size_t sample_count, nufs_method method, int max_iters, double tol,
                                      double *coeffs, size_t capacity, nufs_solve_report *report);
NUFS_API nufs_status nufs_project(const nufs_space *space, const nufs_function *f, int quad_n, double *coeffs,
                                  size_t capacity);
NUFS_API nufs_status nufs_l2_error(const nufs_space *space, const double *coeffs, const nufs_function *f, int quad_n,
                                   int normalized, double *out);
NUFS_API nufs_status nufs_condition_number(const nufs_weighted *w, const nufs_space *space, double *out);
NUFS_API nufs_status nufs_residual(const nufs_space *space, const nufs_domain *Y, int quad_n, double *value,
                                   double *lambda_min, int *quad_used);

/* outputs */
NUFS_API nufs_status nufs_raster(const nufs_space *space, const double *coeffs, int n, double *values,
                                 size_t capacity);
NUFS_API nufs_status nufs_write_coeffs(const nufs_space *space, const double *coeffs, const char *csv_path);
/* Either path may be NULL. values holds n^d complex values. */
NUFS_API nufs_status nufs_write_raster(const double *values, int n, int dim, const char *pgm_path,
                                       const char *csv_path);
NUFS_API nufs_status nufs_haar(int M, int dim, int inverse, const double *in, double *out);

#ifdef __cplusplus
}
#endif

#endif
