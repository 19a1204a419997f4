#ifndef QUIVERDT_H
#define QUIVERDT_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QdtStatus {
  QDT_STATUS_OK = 0,
  QDT_STATUS_NULL_POINTER = 1,
  QDT_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed quiver, dimension vector or field parameters.
   */
  QDT_STATUS_INVALID_INPUT = 3,
  /**
   * Two independent computations disagreed, or a value failed a check.
   */
  QDT_STATUS_CHECK_FAILED = 4,
  QDT_STATUS_BUFFER_TOO_SMALL = 5,
  QDT_STATUS_INDEX_OUT_OF_RANGE = 6,
  /**
   * A coefficient does not fit in `int64_t`.
   */
  QDT_STATUS_OVERFLOW = 7,
  QDT_STATUS_PANIC = 8,
} QdtStatus;

typedef enum QdtWhich {
  QDT_WHICH_TRIVIAL = 0,
  QDT_WHICH_STEINBERG = 1,
} QdtWhich;

/**
 * Opaque quiver handle.
 */
typedef struct QdtQuiver QdtQuiver;

/**
 * Opaque table of `(w, value)` rows, ordered lexicographically by `w`.
 */
typedef struct QdtTable QdtTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *qdt_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void qdt_string_free(char *s);

/**
 * Parses `{"vertices": r, "arrows": [[i, j], ...]}` with 1-based vertices.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum QdtStatus qdt_quiver_from_json(const char *json, struct QdtQuiver **out);

/**
 * `arrows` holds `2 * n_arrows` 0-based vertex indices, tail then head.
 *
 * # Safety
 * `arrows` must point to `2 * n_arrows` readable values; `out` must be writable.
 */
enum QdtStatus qdt_quiver_new(size_t vertices,
                              const size_t *arrows,
                              size_t n_arrows,
                              struct QdtQuiver **out);

/**
 * # Safety
 * `q` must be null or a handle from this library, not yet freed.
 */
void qdt_quiver_free(struct QdtQuiver *q);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `q` must be null or a live handle.
 */
size_t qdt_quiver_vertex_count(const struct QdtQuiver *q);

/**
 * Kac polynomials `A_w` for all nonzero `w <= dim`.
 *
 * # Safety
 * `q` must be live, `dim` must hold `len` values, `out` must be writable.
 */
enum QdtStatus qdt_kac(const struct QdtQuiver *q,
                       const size_t *dim,
                       size_t len,
                       struct QdtTable **out);

/**
 * DT invariants `DT_w` for all nonzero `w <= dim`, cross-checked by two routes.
 *
 * # Safety
 * Same as [`qdt_kac`].
 */
enum QdtStatus qdt_dt(const struct QdtQuiver *q,
                      const size_t *dim,
                      size_t len,
                      struct QdtTable **out);

/**
 * # Safety
 * `t` must be null or a table from this library, not yet freed.
 */
void qdt_table_free(struct QdtTable *t);

/**
 * # Safety
 * `t` must be null or a live table.
 */
size_t qdt_table_len(const struct QdtTable *t);

/**
 * Copies the dimension vector of row `idx` into `buf` (`cap` entries).
 *
 * # Safety
 * `t` must be live and `buf` must hold `cap` writable values.
 */
enum QdtStatus qdt_table_dim(const struct QdtTable *t, size_t idx, size_t *buf, size_t cap);

/**
 * Value of row `idx` as text, e.g. `t^2 + 1`. Free with [`qdt_string_free`].
 *
 * # Safety
 * `t` must be live and `out` writable.
 */
enum QdtStatus qdt_table_text(const struct QdtTable *t, size_t idx, char **out);

/**
 * Integer coefficients of row `idx`, lowest degree first. The row count is
 * always written to `len`; `BufferTooSmall` means `cap` was less than that.
 *
 * # Safety
 * `t` must be live, `buf` must hold `cap` writable values, `len` writable.
 */
enum QdtStatus qdt_table_coeffs(const struct QdtTable *t,
                                size_t idx,
                                int64_t *buf,
                                size_t cap,
                                size_t *len);

/**
 * Full report (Kac, DT and total counts) as a JSON document.
 *
 * # Safety
 * `q` must be live, `dim` must hold `len` values, `out` must be writable.
 */
enum QdtStatus qdt_report_json(const struct QdtQuiver *q,
                               const size_t *dim,
                               size_t len,
                               char **out);

/**
 * Brute-force multiplicity over `GL_dim(F_q)` as `num / den`. `budget`
 * bounds the number of conjugacy classes enumerated.
 *
 * # Safety
 * `q` must be live, `dim` must hold `len` values, `num` and `den` writable.
 */
enum QdtStatus qdt_multiplicity_oracle(const struct QdtQuiver *q,
                                       const size_t *dim,
                                       size_t len,
                                       uint32_t field_size,
                                       enum QdtWhich which,
                                       uint64_t budget,
                                       int64_t *num,
                                       int64_t *den);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QUIVERDT_H */
