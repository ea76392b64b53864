#ifndef VHO_H
#define VHO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Ranking methods, mirrored as plain integers for C callers.
 */
typedef enum VhoMethod {
  VHO_METHOD_TOPSIS = 0,
  VHO_METHOD_GRA = 1,
  VHO_METHOD_DIA = 2,
} VhoMethod;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum VhoStatus {
  VHO_STATUS_OK = 0,
  VHO_STATUS_NULL_POINTER = 1,
  VHO_STATUS_INVALID_ARGUMENT = 2,
  VHO_STATUS_COMPUTATION_FAILED = 3,
} VhoStatus;

/**
 * Opaque criticality report handle; release with `vho_report_free`.
 */
typedef struct VhoReport VhoReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Rank `n_alt` alternatives over `n_attr` attributes.
 *
 * `values` is row-major `n_alt * n_attr`; `directions` holds one byte per
 * attribute (0 = benefit, 1 = cost); `weights` must sum to 1. On success
 * `out_scores` receives one score per alternative and `out_order` the
 * alternative indices from best to worst.
 *
 * # Safety
 * All pointers must be non-null and sized as described above.
 */
enum VhoStatus vho_rank(enum VhoMethod method,
                        size_t n_alt,
                        size_t n_attr,
                        const double *values,
                        const uint8_t *directions,
                        const double *weights,
                        double *out_scores,
                        size_t *out_order);

/**
 * Derive weights from a `k x k` row-major reciprocal judgment matrix.
 *
 * # Safety
 * `judgments` must point to `k * k` doubles and `out_weights` to `k`.
 */
enum VhoStatus vho_ahp_weights(size_t k, const double *judgments, double *out_weights);

/**
 * Run the criticality pipeline over a measured `n_alg x n_param` grid.
 *
 * `directions` holds one byte per parameter; `judgments` is the row-major
 * `n_param x n_param` reciprocal matrix weighting the parameters;
 * `strict_cost_reciprocal` selects the reciprocal cost normalization
 * (nonzero) over the max-ratio default. On success `*out_report` owns a
 * report handle that must be released with `vho_report_free`.
 *
 * # Safety
 * All pointers must be non-null and sized as described above.
 */
enum VhoStatus vho_evaluate(size_t n_alg,
                            size_t n_param,
                            const double *values,
                            const uint8_t *directions,
                            const double *judgments,
                            uint8_t strict_cost_reciprocal,
                            struct VhoReport **out_report);

/**
 * Number of evaluated algorithms in the report.
 *
 * # Safety
 * `report` must be a live handle from `vho_evaluate`.
 */
size_t vho_report_len(const struct VhoReport *report);

/**
 * Copy the per-algorithm criticality indices into `out` (length from
 * `vho_report_len`).
 *
 * # Safety
 * `report` must be live and `out` sized to `vho_report_len`.
 */
enum VhoStatus vho_report_indices(const struct VhoReport *report, double *out);

/**
 * Copy the row-major criticality levels into `out`
 * (`n_alg * n_param` bytes).
 *
 * # Safety
 * `report` must be live and `out` sized to the full grid.
 */
enum VhoStatus vho_report_criticality(const struct VhoReport *report, uint8_t *out);

/**
 * The scale divisor used by the index (maximum observed level).
 *
 * # Safety
 * `report` must be a live handle.
 */
uint8_t vho_report_scale_divisor(const struct VhoReport *report);

/**
 * Per-algorithm recommendation flags (1 = in the argmax set).
 *
 * # Safety
 * `report` must be live and `out` sized to `vho_report_len`.
 */
enum VhoStatus vho_report_recommended(const struct VhoReport *report, uint8_t *out);

/**
 * Release a report handle. Null is a no-op.
 *
 * # Safety
 * `report` must come from `vho_evaluate` and not be freed twice.
 */
void vho_report_free(struct VhoReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VHO_H */
