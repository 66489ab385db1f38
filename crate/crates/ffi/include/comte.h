#ifndef COMTE_H
#define COMTE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// `0` for r-graphs, `1` for q-graphs.
typedef enum ComteFamily {
  COMTE_FAMILY_R = 0,
  COMTE_FAMILY_Q = 1,
} ComteFamily;

typedef enum ComteStatus {
  COMTE_STATUS_OK = 0,
  COMTE_STATUS_NULL_POINTER = 1,
  COMTE_STATUS_INVALID_UTF8 = 2,
  // Input text could not be parsed.
  COMTE_STATUS_PARSE = 3,
  // Parsed, but not a valid comte or argument.
  COMTE_STATUS_INVALID = 4,
  // The computation itself failed, e.g. size limits.
  COMTE_STATUS_COMPUTATION = 5,
  COMTE_STATUS_PANIC = 6,
} ComteStatus;

// Opaque comte.
typedef struct ComteHandle ComteHandle;

// Opaque finite rack.
typedef struct RackHandle RackHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null after a success.
// Valid until the next call into the library on this thread.
const char *comte_last_error_message(void);

// # Safety
// `s` is null or came from this library and has not been freed.
void comte_string_free(char *s);

// # Safety
// `h` is null or came from this library and has not been freed.
void comte_free(struct ComteHandle *h);

// Decodes a JSON document. Bad references fail with `Invalid`; flow
// conservation is left to [`comte_is_valid`].
//
// # Safety
// `json` is a nul-terminated string; `out` is writable.
enum ComteStatus comte_from_json(const char *json, struct ComteHandle **out);

// # Safety
// `code` is a nul-terminated string; `out` is writable.
enum ComteStatus comte_from_gauss(const char *code, struct ComteHandle **out);

// # Safety
// `code` is a nul-terminated string; `out` is writable.
enum ComteStatus comte_from_pd(const char *code, struct ComteHandle **out);

// # Safety
// `h` is a live handle; `out` is writable.
enum ComteStatus comte_to_json(const struct ComteHandle *h, char **out);

// # Safety
// `h` is a live handle; `vertices` and `arrows` are writable.
enum ComteStatus comte_counts(const struct ComteHandle *h, size_t *vertices, size_t *arrows);

// # Safety
// `h` is a live handle; `out` is writable.
enum ComteStatus comte_is_valid(const struct ComteHandle *h, bool *out);

// The `i`-th Alexander polynomial, unit-normalized, as text.
//
// # Safety
// `h` is a live handle; `out` is writable.
enum ComteStatus comte_alexander(const struct ComteHandle *h, size_t i, char **out);

// The linking matrix, one row per line.
//
// # Safety
// `h` is a live handle; `out` is writable.
enum ComteStatus comte_linking(const struct ComteHandle *h, char **out);

// `trivial<n>`, `dihedral3` or `tetrahedron`.
//
// # Safety
// `name` is a nul-terminated string; `out` is writable.
enum ComteStatus comte_rack_builtin(const char *name, struct RackHandle **out);

// A rack from its table: the size, then one row per element.
//
// # Safety
// `table` is a nul-terminated string; `out` is writable.
enum ComteStatus comte_rack_parse(const char *table, struct RackHandle **out);

// # Safety
// `r` is null or came from this library and has not been freed.
void comte_rack_free(struct RackHandle *r);

// # Safety
// `h` and `rack` are live handles; `out` is writable.
enum ComteStatus comte_coloring_count(const struct ComteHandle *h,
                                      const struct RackHandle *rack,
                                      size_t *out);

// The cocycle invariant for the tetrahedral quandle and its builtin
// cocycle, e.g. `4 + 12*s`.
//
// # Safety
// `h` is a live handle; `out` is writable.
enum ComteStatus comte_phi_tetrahedron(const struct ComteHandle *h, char **out);

// `H_1 .. H_degree` of the underlying graph, one `H_k = ...` per line.
//
// # Safety
// `h` is a live handle; `out` is writable.
enum ComteStatus comte_homology(const struct ComteHandle *h,
                                size_t degree,
                                bool q_quotient,
                                char **out);

// Number of isomorphism classes on `vertices` vertices, the empty graph
// included.
//
// # Safety
// `out` is writable.
enum ComteStatus comte_census_count(enum ComteFamily family, size_t vertices, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMTE_H */
