#ifndef MBQC_H
#define MBQC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an FFI call. `Ok` is zero; everything else is an error.
typedef enum MbqcStatus {
  MBQC_STATUS_OK = 0,
  MBQC_STATUS_NULL_POINTER = 1,
  MBQC_STATUS_INVALID_UTF8 = 2,
  MBQC_STATUS_PARSE = 3,
  MBQC_STATUS_INVALID_PATTERN = 4,
  MBQC_STATUS_NO_FLOW = 5,
  MBQC_STATUS_NOT_STANDARD = 6,
  MBQC_STATUS_NOT_SHIFTED = 7,
  MBQC_STATUS_WRONG_DIALECT = 8,
  MBQC_STATUS_RESOURCE = 9,
  MBQC_STATUS_SIMULATION = 10,
  MBQC_STATUS_UNSUPPORTED = 11,
  MBQC_STATUS_PANIC = 12,
} MbqcStatus;

typedef enum MbqcVariant {
  MBQC_VARIANT_DIRECT = 0,
  MBQC_VARIANT_CLUSTER = 1,
} MbqcVariant;

typedef enum MbqcFanIn {
  MBQC_FAN_IN_LINEAR = 0,
  MBQC_FAN_IN_TREE = 1,
} MbqcFanIn;

// Opaque circuit handle.
typedef struct MbqcCircuit MbqcCircuit;

// Opaque pattern handle.
typedef struct MbqcPattern MbqcPattern;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or an empty string. The
// pointer stays valid until the next call into this library on the same
// thread.
const char *mbqc_last_error(void);

// # Safety
// `s` is null or a string returned by this library, not yet freed.
void mbqc_string_free(char *s);

// Parses circuit text into a new handle.
//
// # Safety
// `text` is a NUL-terminated string; `out` is writable.
enum MbqcStatus mbqc_circuit_parse(const char *text, struct MbqcCircuit **out);

// # Safety
// `c` is null or a handle from this library, not yet freed.
void mbqc_circuit_free(struct MbqcCircuit *c);

// Circuit text; release it with [`mbqc_string_free`]. Null on a null handle.
//
// # Safety
// `c` is null or a live handle.
char *mbqc_circuit_serialize(const struct MbqcCircuit *c);

// Number of wires.
//
// # Safety
// `c` is a live handle; `out` is writable.
enum MbqcStatus mbqc_circuit_wires(const struct MbqcCircuit *c, uint32_t *out);

// Depth under one-interaction-per-wire scheduling.
//
// # Safety
// `c` is a live handle; `out` is writable.
enum MbqcStatus mbqc_circuit_depth(const struct MbqcCircuit *c, size_t *out);

// Parses pattern text into a new handle.
//
// # Safety
// `text` is a NUL-terminated string; `out` is writable.
enum MbqcStatus mbqc_pattern_parse(const char *text, struct MbqcPattern **out);

// # Safety
// `p` is null or a handle from this library, not yet freed.
void mbqc_pattern_free(struct MbqcPattern *p);

// Pattern text; release it with [`mbqc_string_free`]. Null on a null handle.
//
// # Safety
// `p` is null or a live handle.
char *mbqc_pattern_serialize(const struct MbqcPattern *p);

// Translates a source circuit; the pattern is standardized and
// signal-shifted.
//
// # Safety
// `c` is a live handle; `out` is writable.
enum MbqcStatus mbqc_circuit_to_pattern(const struct MbqcCircuit *c,
                                        enum MbqcVariant variant,
                                        struct MbqcPattern **out);

// Coherent circuit of a standard, signal-shifted pattern.
//
// # Safety
// `p` is a live handle; `out` is writable.
enum MbqcStatus mbqc_pattern_to_circuit(const struct MbqcPattern *p,
                                        enum MbqcFanIn fanin,
                                        struct MbqcCircuit **out);

// The full pipeline: translation, rewrites and a tree fan-in circuit.
// `d_prime` may be null.
//
// # Safety
// `c` is a live handle; `out` is writable; `d_prime` is null or writable.
enum MbqcStatus mbqc_circuit_parallelize(const struct MbqcCircuit *c,
                                         struct MbqcCircuit **out,
                                         size_t *d_prime);

// # Safety
// `p` is a live handle; `out` is writable.
enum MbqcStatus mbqc_pattern_standardize(const struct MbqcPattern *p, struct MbqcPattern **out);

// # Safety
// `p` is a live handle; `out` is writable.
enum MbqcStatus mbqc_pattern_shift(const struct MbqcPattern *p, struct MbqcPattern **out);

// # Safety
// `p` is a live handle; `out` is writable.
enum MbqcStatus mbqc_pattern_simplify(const struct MbqcPattern *p, struct MbqcPattern **out);

// # Safety
// `p` is a live handle; `out` is writable.
enum MbqcStatus mbqc_pattern_quantum_depth(const struct MbqcPattern *p, size_t *out);

// Depth predicted from the influencing paths of a flow-form pattern.
//
// # Safety
// `p` is a live handle; `out` is writable.
enum MbqcStatus mbqc_pattern_characterized_depth(const struct MbqcPattern *p, size_t *out);

// Number of layers of the flow of the pattern's geometry, outputs
// included; `MbqcStatus::NoFlow` when there is none.
//
// # Safety
// `p` is a live handle; `out` is writable.
enum MbqcStatus mbqc_pattern_flow_depth(const struct MbqcPattern *p, size_t *out);

// Compares the operators of two circuit or pattern texts up to global
// phase. `out` receives 1 when they agree within `tol`, 0 otherwise.
//
// # Safety
// `a` and `b` are NUL-terminated strings; `out` is writable.
enum MbqcStatus mbqc_equivalent(const char *a, const char *b, double tol, int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MBQC_H */
