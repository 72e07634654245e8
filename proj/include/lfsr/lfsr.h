/*
 * lfsr: graph-regularized light field spatial super-resolution.
 *
 * C interface to the library. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Every fallible
 * call returns an lfsr_status; on failure lfsr_last_error() describes the
 * problem for the calling thread.
 *
 * Angular coordinates (s, t) and spatial row indices passed to this API are
 * 1-based.
 */
#ifndef LFSR_LFSR_H
#define LFSR_LFSR_H

#include <stddef.h>

#if defined(LFSR_BUILDING_LIBRARY)
#define LFSR_API __attribute__((visibility("default")))
#else
#define LFSR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lfsr_status {
  LFSR_OK = 0,
  LFSR_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer */
  LFSR_ERR_DOMAIN = 2,           /* index or shape out of range */
  LFSR_ERR_CONFIG = 3,           /* invalid configuration */
  LFSR_ERR_IO = 4,               /* file or directory problem */
  LFSR_ERR_NUMERICAL = 5,        /* solver breakdown */
  LFSR_ERR_INTERNAL = 6
} lfsr_status;

typedef enum lfsr_variant { LFSR_VARIANT_SQ = 0, LFSR_VARIANT_DR = 1 } lfsr_variant;

typedef struct lfsr_lightfield lfsr_lightfield;
typedef struct lfsr_config lfsr_config;
typedef struct lfsr_report lfsr_report;
typedef struct lfsr_psnr lfsr_psnr;

/* Message of the last failed call on this thread; never null. */
LFSR_API const char* lfsr_last_error(void);
LFSR_API const char* lfsr_status_string(lfsr_status status);

/* Light fields: 1 (gray) or 3 (RGB) channels of M x M views, intensities
 * in [0, 1]. */
LFSR_API lfsr_status lfsr_lightfield_load(const char* dir, lfsr_lightfield** out);
LFSR_API lfsr_status lfsr_lightfield_save(const lfsr_lightfield* lf, const char* dir);
/* data holds channels * M*M * rows * cols values: channel-major, then views
 * by linear index k = (t-1)*M + s, then pixels column-major. */
LFSR_API lfsr_status lfsr_lightfield_create(int M, int rows, int cols, int channels,
                                            int bit_depth, const double* data,
                                            lfsr_lightfield** out);
LFSR_API lfsr_status lfsr_lightfield_shape(const lfsr_lightfield* lf, int* M, int* rows,
                                           int* cols, int* channels);
LFSR_API lfsr_status lfsr_lightfield_bit_depth(const lfsr_lightfield* lf, int* bit_depth);
/* Copies the data in the lfsr_lightfield_create layout; capacity is in
 * values. */
LFSR_API lfsr_status lfsr_lightfield_copy_data(const lfsr_lightfield* lf, double* data,
                                               size_t capacity);
LFSR_API void lfsr_lightfield_free(lfsr_lightfield* lf);

/* Box-filter degradation by an integer factor. */
LFSR_API lfsr_status lfsr_degrade(const lfsr_lightfield* lf, int alpha, lfsr_lightfield** out);

/* Configuration, `key = value` text format. */
LFSR_API lfsr_status lfsr_config_create(lfsr_config** out);
LFSR_API lfsr_status lfsr_config_load(const char* path, lfsr_config** out);
LFSR_API lfsr_status lfsr_config_set(lfsr_config* cfg, const char* key, const char* value);
/* Writes a NUL-terminated value; *needed receives the size including NUL. */
LFSR_API lfsr_status lfsr_config_get(const lfsr_config* cfg, const char* key, char* buf,
                                     size_t capacity, size_t* needed);
LFSR_API void lfsr_config_free(lfsr_config* cfg);

/* Super-resolves by the configured alpha. report may be null. */
LFSR_API lfsr_status lfsr_super_resolve(const lfsr_lightfield* lo, const lfsr_config* cfg,
                                        lfsr_lightfield** out, lfsr_report** report);
LFSR_API lfsr_status lfsr_report_write(const lfsr_report* report, const char* path);
LFSR_API lfsr_status lfsr_report_summary(const lfsr_report* report, int* ppa_steps,
                                         int* total_cg_iterations, double* final_residual);
LFSR_API void lfsr_report_free(lfsr_report* report);

/* Per-view luma PSNR with a border crop. */
LFSR_API lfsr_status lfsr_evaluate(const lfsr_lightfield* recon, const lfsr_lightfield* truth,
                                   int crop, lfsr_psnr** out);
LFSR_API lfsr_status lfsr_psnr_view_count(const lfsr_psnr* psnr, int* count);
LFSR_API lfsr_status lfsr_psnr_view(const lfsr_psnr* psnr, int index, int* s, int* t,
                                    double* value);
LFSR_API lfsr_status lfsr_psnr_stats(const lfsr_psnr* psnr, double* mean, double* variance);
/* CSV text as documented for `lfsr eval`; same buffer contract as
 * lfsr_config_get. */
LFSR_API lfsr_status lfsr_psnr_csv(const lfsr_psnr* psnr, char* buf, size_t capacity,
                                   size_t* needed);
LFSR_API void lfsr_psnr_free(lfsr_psnr* psnr);

/* Writes the luma epipolar image for angular row s and spatial row x. */
LFSR_API lfsr_status lfsr_epi_write(const lfsr_lightfield* lf, int s, int x, const char* path);

/* Writes the per-pixel disparity brackets estimated on a high-resolution
 * luma estimate, one integer grid per view. */
LFSR_API lfsr_status lfsr_delta_dump(const lfsr_lightfield* lf, const lfsr_config* cfg,
                                     const char* path);

#ifdef __cplusplus
}
#endif

#endif /* LFSR_LFSR_H */
