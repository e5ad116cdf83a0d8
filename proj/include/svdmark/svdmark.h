/*
 * svdmark: SVD watermarking (semi-blind and hash-keyed invisible schemes).
 *
 * Plain C interface over opaque handles. Every fallible call returns an
 * svdmark_status; on failure, svdmark_last_error() holds a one-line message
 * for the calling thread and no output handle is written. Handles returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function (NULL is accepted by every *_free).
 */
#ifndef SVDMARK_SVDMARK_H
#define SVDMARK_SVDMARK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SVDMARK_BUILDING)
#    define SVDMARK_API __declspec(dllexport)
#  else
#    define SVDMARK_API __declspec(dllimport)
#  endif
#else
#  define SVDMARK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum svdmark_status {
    SVDMARK_OK = 0,
    SVDMARK_E_INVALID_INPUT = 1,
    SVDMARK_E_DIMENSION = 2,
    SVDMARK_E_INVALID_PARAMETER = 3,
    SVDMARK_E_DEGENERATE_KEY = 4,
    SVDMARK_E_INVALID_KEY = 5,
    SVDMARK_E_MALFORMED_SIDEINFO = 6,
    SVDMARK_E_CODEC = 7,
    SVDMARK_E_UNSUPPORTED_FORMAT = 8,
    SVDMARK_E_UNSUPPORTED_VERSION = 9,
    SVDMARK_E_IO = 10,
    SVDMARK_E_NULL_ARGUMENT = 20,
    SVDMARK_E_OUT_OF_MEMORY = 21,
    SVDMARK_E_INTERNAL = 99
} svdmark_status;

typedef enum svdmark_scheme { SVDMARK_SEMI_BLIND = 0, SVDMARK_HASH_CODE = 1 } svdmark_scheme;

typedef enum svdmark_strategy {
    SVDMARK_LUMINANCE = 0,
    SVDMARK_BLUE_CHANNEL = 1,
    SVDMARK_PER_CHANNEL = 2
} svdmark_strategy;

typedef enum svdmark_attack_kind {
    SVDMARK_ATTACK_GAUSSIAN_NOISE = 0,
    SVDMARK_ATTACK_QUANTIZE8 = 1,
    SVDMARK_ATTACK_CROP = 2,
    SVDMARK_ATTACK_RESCALE = 3
} svdmark_attack_kind;

typedef enum svdmark_sample_kind {
    SVDMARK_SAMPLE_PORTRAIT = 0,
    SVDMARK_SAMPLE_TEXTURE = 1,
    SVDMARK_SAMPLE_PLANE = 2
} svdmark_sample_kind;

/* Only the fields relevant to `kind` are read. rect = {top, left, height, width}. */
typedef struct svdmark_attack {
    svdmark_attack_kind kind;
    double sigma;
    size_t rect[4];
    double scale;
    uint64_t seed;
} svdmark_attack;

typedef struct svdmark_matrix svdmark_matrix;
typedef struct svdmark_sideinfo svdmark_sideinfo;
typedef struct svdmark_rgb svdmark_rgb;
typedef struct svdmark_bundle svdmark_bundle;
typedef struct svdmark_report svdmark_report;

SVDMARK_API const char* svdmark_version(void);
SVDMARK_API const char* svdmark_last_error(void);
SVDMARK_API const char* svdmark_status_name(svdmark_status status);

/* ---- matrices ---------------------------------------------------------- */

/* Copies rows*cols row-major doubles; data may be NULL for a zero matrix. */
SVDMARK_API svdmark_status svdmark_matrix_create(size_t rows, size_t cols, const double* data, svdmark_matrix** out);
SVDMARK_API void svdmark_matrix_free(svdmark_matrix* m);
SVDMARK_API size_t svdmark_matrix_rows(const svdmark_matrix* m);
SVDMARK_API size_t svdmark_matrix_cols(const svdmark_matrix* m);
/* Borrowed pointer to rows*cols row-major doubles, valid until the handle is freed. */
SVDMARK_API const double* svdmark_matrix_data(const svdmark_matrix* m);

SVDMARK_API svdmark_status svdmark_svd(const svdmark_matrix* a, svdmark_matrix** u, svdmark_matrix** s,
                                       svdmark_matrix** v);
SVDMARK_API svdmark_status svdmark_reconstruct(const svdmark_matrix* u, const svdmark_matrix* s,
                                               const svdmark_matrix* v, svdmark_matrix** out);
SVDMARK_API svdmark_status svdmark_orthogonality_residual(const svdmark_matrix* m, double* out);
SVDMARK_API svdmark_status svdmark_resize_nearest(const svdmark_matrix* m, size_t rows, size_t cols,
                                                  svdmark_matrix** out);

/* ---- semi-blind scheme ------------------------------------------------- */

SVDMARK_API svdmark_status svdmark_embed(const svdmark_matrix* cover, const svdmark_matrix* watermark, double alpha,
                                         svdmark_matrix** marked, svdmark_sideinfo** info);
SVDMARK_API svdmark_status svdmark_extract(const svdmark_matrix* marked, const svdmark_sideinfo* info,
                                           svdmark_matrix** w_star);
/* Distorted principal components (U^T (marked - U S V^T) V) / alpha. */
SVDMARK_API svdmark_status svdmark_extract_components(const svdmark_matrix* marked, const svdmark_sideinfo* info,
                                                      svdmark_matrix** a_wa_star);
/* components * v_ref^T. */
SVDMARK_API svdmark_status svdmark_detect_reference(const svdmark_matrix* a_wa_star, const svdmark_matrix* v_ref,
                                                    svdmark_matrix** p_star);

/* ---- hash-code scheme -------------------------------------------------- */

/* Writes rows*cols mask bytes (row-major) to out. */
SVDMARK_API svdmark_status svdmark_derive_mask(const uint8_t* id, size_t id_len, size_t rows, size_t cols,
                                               uint8_t* out);
SVDMARK_API svdmark_status svdmark_embed_hash(const svdmark_matrix* cover, const svdmark_matrix* watermark,
                                              const uint8_t* id, size_t id_len, double alpha,
                                              svdmark_matrix** marked, svdmark_sideinfo** info);
SVDMARK_API svdmark_status svdmark_extract_hash(const svdmark_matrix* marked, const svdmark_sideinfo* info,
                                                const uint8_t* id, size_t id_len, svdmark_matrix** w_star);
/* verified is set to 1 when nc >= threshold, else 0. */
SVDMARK_API svdmark_status svdmark_verify_hash(const svdmark_matrix* marked, const svdmark_sideinfo* info,
                                               const uint8_t* id, size_t id_len, const svdmark_matrix* claimed,
                                               double threshold, double* nc, int* verified);

/* ---- side info --------------------------------------------------------- */

SVDMARK_API void svdmark_sideinfo_free(svdmark_sideinfo* info);
SVDMARK_API svdmark_scheme svdmark_sideinfo_scheme(const svdmark_sideinfo* info);
SVDMARK_API double svdmark_sideinfo_alpha(const svdmark_sideinfo* info);
SVDMARK_API svdmark_status svdmark_sideinfo_save(const svdmark_sideinfo* info, const char* path);
SVDMARK_API svdmark_status svdmark_sideinfo_load(const char* path, svdmark_sideinfo** out);
/* Sets *is_bundle to 1 for a colour bundle key file, 0 for a single side info. */
SVDMARK_API svdmark_status svdmark_keyfile_is_bundle(const char* path, int* is_bundle);

/* ---- colour ------------------------------------------------------------ */

SVDMARK_API svdmark_status svdmark_rgb_create(const svdmark_matrix* r, const svdmark_matrix* g,
                                              const svdmark_matrix* b, svdmark_rgb** out);
SVDMARK_API void svdmark_rgb_free(svdmark_rgb* img);
/* channel: 0 = R, 1 = G, 2 = B. Returns a copy. */
SVDMARK_API svdmark_status svdmark_rgb_channel(const svdmark_rgb* img, int channel, svdmark_matrix** out);
/* max(R,G,B) + min(R,G,B) per pixel. */
SVDMARK_API svdmark_status svdmark_luminance(const svdmark_rgb* img, svdmark_matrix** out);
/* id must be given (id_len > 0) for SVDMARK_HASH_CODE and omitted (NULL, 0) otherwise. */
SVDMARK_API svdmark_status svdmark_embed_color(const svdmark_rgb* img, const svdmark_matrix* watermark,
                                               svdmark_strategy strategy, svdmark_scheme scheme, double alpha,
                                               const uint8_t* id, size_t id_len, svdmark_rgb** marked,
                                               svdmark_bundle** bundle);
SVDMARK_API svdmark_status svdmark_extract_color(const svdmark_rgb* img, const svdmark_bundle* bundle,
                                                 svdmark_strategy strategy, const uint8_t* id, size_t id_len,
                                                 svdmark_matrix** w_star);
SVDMARK_API void svdmark_bundle_free(svdmark_bundle* bundle);
SVDMARK_API svdmark_strategy svdmark_bundle_strategy(const svdmark_bundle* bundle);
SVDMARK_API svdmark_status svdmark_bundle_save(const svdmark_bundle* bundle, const char* path);
SVDMARK_API svdmark_status svdmark_bundle_load(const char* path, svdmark_bundle** out);

/* ---- analysis ---------------------------------------------------------- */

/* Identical images give +infinity. */
SVDMARK_API svdmark_status svdmark_psnr(const svdmark_matrix* a, const svdmark_matrix* b, double* out);
SVDMARK_API svdmark_status svdmark_normalized_correlation(const svdmark_matrix* a, const svdmark_matrix* b,
                                                          double* out);
SVDMARK_API svdmark_status svdmark_apply_attack(const svdmark_matrix* a, const svdmark_attack* attack,
                                                svdmark_matrix** out);
SVDMARK_API svdmark_status svdmark_sweep(const svdmark_matrix* cover, const svdmark_matrix* watermark,
                                         const double* alphas, size_t n_alphas, const svdmark_attack* attacks,
                                         size_t n_attacks, svdmark_report** out);
SVDMARK_API void svdmark_report_free(svdmark_report* report);
SVDMARK_API size_t svdmark_report_rows(const svdmark_report* report);
SVDMARK_API svdmark_status svdmark_report_row(const svdmark_report* report, size_t index, double* alpha,
                                              double* psnr_db, double* nc);
/* CSV text including the terminating NUL. *needed receives the buffer size
 * required; buf may be NULL to query it. */
SVDMARK_API svdmark_status svdmark_report_csv(const svdmark_report* report, char* buf, size_t capacity,
                                              size_t* needed);

/* ---- images ------------------------------------------------------------ */

/* .pgm (8-bit) or .svdf (lossless float) by extension. */
SVDMARK_API svdmark_status svdmark_read_image(const char* path, svdmark_matrix** out);
SVDMARK_API svdmark_status svdmark_write_image(const svdmark_matrix* m, const char* path);
SVDMARK_API svdmark_status svdmark_read_ppm(const char* path, svdmark_rgb** out);
SVDMARK_API svdmark_status svdmark_write_ppm(const svdmark_rgb* img, const char* path);

/* Deterministic synthetic test images with values in [0, 255]. */
SVDMARK_API svdmark_status svdmark_sample_image(svdmark_sample_kind kind, size_t rows, size_t cols, uint64_t seed,
                                                svdmark_matrix** out);
SVDMARK_API svdmark_status svdmark_sample_rgb(size_t rows, size_t cols, uint64_t seed, double lo, double hi,
                                              svdmark_rgb** out);

#ifdef __cplusplus
}
#endif

#endif /* SVDMARK_SVDMARK_H */
