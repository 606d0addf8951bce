#ifndef SIMPLEXT_H
#define SIMPLEXT_H

#include <stdbool.h>
#include <stddef.h>

// Result code of every fallible call.
typedef enum SxStatus {
  SX_STATUS_OK = 0,
  SX_STATUS_NULL_POINTER = 1,
  SX_STATUS_INVALID_UTF8 = 2,
  SX_STATUS_PARSE = 3,
  SX_STATUS_AXIOM = 4,
  SX_STATUS_INVALID_INPUT = 5,
  SX_STATUS_UNSUPPORTED = 6,
  SX_STATUS_SEARCH_SPACE = 7,
  SX_STATUS_CONTRACT_VIOLATION = 8,
  SX_STATUS_PANIC = 9,
} SxStatus;

// A simple extension of a structure.
typedef struct SxExtension SxExtension;

// A parsed structure together with its class.
typedef struct SxStructure SxStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or null. Valid until
// the next failing call on this thread.
const char *sx_last_error(void);

// Parses a structure in the text format.
//
// # Safety
// `text` is null or a NUL-terminated string; `out` is null or writable.
enum SxStatus sx_structure_parse(const char *text, struct SxStructure **out);

// Releases a structure. Null is ignored.
//
// # Safety
// `s` is null or a handle from [`sx_structure_parse`] not yet freed.
void sx_structure_free(struct SxStructure *s);

// Number of elements.
//
// # Safety
// `s` is null or a live handle; `out` is null or writable.
enum SxStatus sx_structure_size(const struct SxStructure *s, size_t *out);

// Whether the structure is simple.
//
// # Safety
// `s` is null or a live handle; `out` is null or writable.
enum SxStatus sx_structure_is_simple(const struct SxStructure *s, bool *out);

// The normalized text of the structure; release with [`sx_string_free`].
//
// # Safety
// `s` is null or a live handle; `out` is null or writable.
enum SxStatus sx_structure_write(const struct SxStructure *s, char **out);

// Builds a simple extension with the construction for the structure's class.
//
// # Safety
// `s` is null or a live handle; `out` is null or writable.
enum SxStatus sx_structure_extend(const struct SxStructure *s, struct SxExtension **out);

// Releases an extension. Null is ignored.
//
// # Safety
// `e` is null or a handle from [`sx_structure_extend`] not yet freed.
void sx_extension_free(struct SxExtension *e);

// Number of elements the extension added.
//
// # Safety
// `e` is null or a live handle; `out` is null or writable.
enum SxStatus sx_extension_added_count(const struct SxExtension *e, size_t *out);

// Whether the extended structure is simple.
//
// # Safety
// `e` is null or a live handle; `out` is null or writable.
enum SxStatus sx_extension_is_simple(const struct SxExtension *e, bool *out);

// The extension report as printed by the CLI; release with
// [`sx_string_free`].
//
// # Safety
// `e` is null or a live handle; `out` is null or writable.
enum SxStatus sx_extension_report(const struct SxExtension *e, char **out);

// Guaranteed number of added elements for `class` on `n` elements.
//
// # Safety
// `class` is null or a NUL-terminated string; `out` is null or writable.
enum SxStatus sx_bound(const char *class_, size_t n, size_t *out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` is null or a string from this library not yet freed.
void sx_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIMPLEXT_H */
