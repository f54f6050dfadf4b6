/* Level lines shortening: C API.
 *
 * Images evolve by moving every level line of their bilinear interpolation
 * independently under curve shortening (or its affine-invariant variant) and
 * repainting the image from the surviving lines. All objects are opaque
 * handles; functions return LLS_OK or an error code, with a thread-local
 * message available from lls_last_error().
 */
#ifndef LLS_H
#define LLS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lls_status {
    LLS_OK = 0,
    LLS_ERROR = 1,           /* unexpected failure */
    LLS_ERROR_FORMAT = 2,    /* unreadable input or bad parameters */
    LLS_ERROR_GEOMETRY = 3,  /* crossing curves, broken nesting */
    LLS_ERROR_NUMERICAL = 4, /* flow could not keep a curve simple */
    LLS_ERROR_TIMEOUT = 5    /* step budget exhausted */
} lls_status;

typedef struct lls_image lls_image;   /* sample grid */
typedef struct lls_config lls_config; /* pipeline configuration */
typedef struct lls_lines lls_lines;   /* level-line family with hierarchy */

const char* lls_version(void);

/* Message for the most recent failure on this thread. */
const char* lls_last_error(void);

/* --- images (PGM P2/P5 or LLSF float rasters) --------------------------- */

lls_status lls_image_load(const char* path, lls_image** out);
lls_status lls_image_create(int width, int height, const double* samples,
                            lls_image** out);
void lls_image_free(lls_image* img);

int lls_image_width(const lls_image* img);
int lls_image_height(const lls_image* img);
double lls_image_get(const lls_image* img, int x, int y);

/* Bilinear surface value at a sub-pixel point. */
lls_status lls_image_eval(const lls_image* img, double x, double y, double* out);

lls_status lls_image_write_pgm(const lls_image* img, const char* path, int maxval);
lls_status lls_image_write_float(const lls_image* img, const char* path);

/* --- pipeline ------------------------------------------------------------ */

lls_config* lls_config_new(void);
void lls_config_free(lls_config* cfg);

lls_status lls_config_set_time(lls_config* cfg, double t);
lls_status lls_config_set_scheme(lls_config* cfg, const char* scheme); /* cs|as */
lls_status lls_config_set_quant(lls_config* cfg, double q);
lls_status lls_config_set_offset(lls_config* cfg, double offset);
lls_status lls_config_set_precision(lls_config* cfg, double delta);
lls_status lls_config_set_border(lls_config* cfg, const char* mode); /* fixed|evolve */
lls_status lls_config_set_pad(lls_config* cfg, int pad);
lls_status lls_config_set_split(lls_config* cfg, double s); /* negative: off */
lls_status lls_config_set_threads(lls_config* cfg, int threads);

/* Artifact paths. Keys: image, float_image, svg_before, svg_after,
 * curvature_map, tree_json, tree_json_vertices, oracle_diff, report,
 * trace_csv. */
lls_status lls_config_set_output(lls_config* cfg, const char* key,
                                 const char* path);

/* Run the full chain on an image; *out receives the evolved image. */
lls_status lls_run(const lls_image* input, const lls_config* cfg, lls_image** out);

/* Contrast-invariance check against a strictly increasing integer lut
 * covering the input range; *report_json receives a malloc'd JSON string. */
lls_status lls_contrast_test(const lls_image* input, const lls_config* cfg,
                             const int64_t* lut, int lut_size, char** report_json);
void lls_string_free(char* s);

/* Finite-difference reference solver (u_t = |Du| k^p, p = 1 or 1/3). */
lls_status lls_fd_evolve(const lls_image* input, double dt, double eps_reg,
                         double t_end, const char* scheme, lls_image** out);

/* --- level-line access --------------------------------------------------- */

/* Extract the level-line family and its inclusion tree at quantized levels
 * offset + k*quant (pad != 0 surrounds the image with a zero frame first). */
lls_status lls_extract(const lls_image* input, double quant, double offset,
                       double precision, int pad, lls_lines** out);
void lls_lines_free(lls_lines* lines);

int lls_lines_count(const lls_lines* lines);
double lls_lines_level(const lls_lines* lines, int idx);
int lls_lines_parent(const lls_lines* lines, int idx); /* -1 = root */
int lls_lines_vertex_count(const lls_lines* lines, int idx);

/* Copy vertices as x0,y0,x1,y1,... ; capacity counts doubles. */
lls_status lls_lines_vertices(const lls_lines* lines, int idx, double* xy,
                              int capacity);

/* Evolve every line independently to time t (in place, collapsed lines
 * removed and the hierarchy respliced). */
lls_status lls_lines_evolve(lls_lines* lines, double t, const char* scheme,
                            double precision);

lls_status lls_lines_rasterize(const lls_lines* lines, int width, int height,
                               double background, lls_image** out);
lls_status lls_lines_write_svg(const lls_lines* lines, const char* path,
                               int curvature_colors);
lls_status lls_lines_write_json(const lls_lines* lines, const char* path,
                                int with_vertices);

#ifdef __cplusplus
}
#endif

#endif /* LLS_H */
