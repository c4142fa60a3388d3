#ifndef PITCHCLASS_H
#define PITCHCLASS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_ARGUMENT = 2,
  PC_STATUS_DOMAIN = 3,
  PC_STATUS_CLOSURE = 4,
  PC_STATUS_MONOTONICITY = 5,
  PC_STATUS_UNREPRESENTABLE = 6,
  PC_STATUS_PARSE = 7,
  PC_STATUS_UTF8 = 8,
  PC_STATUS_PANIC = 9,
} PcStatus;

typedef enum PcConvention {
  PC_CONVENTION_A_ROOTED = 0,
  PC_CONVENTION_C_ROOTED = 1,
} PcConvention;

typedef enum PcTableFormat {
  PC_TABLE_FORMAT_CSV = 0,
  PC_TABLE_FORMAT_JSON = 1,
  PC_TABLE_FORMAT_PRETTY = 2,
} PcTableFormat;

/**
 * Opaque handle to a tuning space.
 */
typedef struct PcTuningSpace PcTuningSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *pc_last_error_message(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum PcStatus pc_space_new_tet(double standard_pitch_hz, uint32_t n, struct PcTuningSpace **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum PcStatus pc_space_new_edo(double standard_pitch_hz, uint32_t n, struct PcTuningSpace **out);

/**
 * Builds a space from a preset such as `12tet@440` or from definition text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for writes.
 */
enum PcStatus pc_space_load(const char *text, struct PcTuningSpace **out);

/**
 * # Safety
 * `space` must be NULL or a handle from this library not yet freed.
 */
void pc_space_free(struct PcTuningSpace *space);

/**
 * # Safety
 * `space` must be a live handle and `out_n` valid for writes.
 */
enum PcStatus pc_space_n(const struct PcTuningSpace *space, uint32_t *out_n);

/**
 * # Safety
 * `space` must be a live handle and `out_hz` valid for writes.
 */
enum PcStatus pc_space_pitch_hz(const struct PcTuningSpace *space,
                                int64_t k,
                                uint32_t i,
                                double *out_hz);

/**
 * Exact pitch as text, e.g. `440*2^(1/4)`.
 *
 * # Safety
 * `space` must be a live handle and `out` valid for writes.
 */
enum PcStatus pc_space_exact_pitch(const struct PcTuningSpace *space,
                                   int64_t k,
                                   uint32_t i,
                                   char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void pc_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum PcStatus pc_harmonic_add(uint32_t n, uint32_t a, uint32_t b, uint32_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum PcStatus pc_harmonic_inverse(uint32_t n, uint32_t a, uint32_t *out);

/**
 * # Safety
 * `text` must be a NUL-terminated string and `out_class` valid for writes.
 */
enum PcStatus pc_parse_note_name(const char *text, enum PcConvention conv, uint8_t *out_class);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum PcStatus pc_render_note_name(uint8_t class_, enum PcConvention conv, char **out);

/**
 * Checks that the harmony group on `n` classes is isomorphic to Z_n.
 *
 * # Safety
 * `out_confirmed` must be valid for writes.
 */
enum PcStatus pc_verify_pcit(uint32_t n, bool *out_confirmed);

/**
 * # Safety
 * `space` must be a live handle and `out` valid for writes.
 */
enum PcStatus pc_export_scl(const struct PcTuningSpace *space, char **out);

/**
 * # Safety
 * `space` must be a live handle and `out` valid for writes.
 */
enum PcStatus pc_emit_table(const struct PcTuningSpace *space,
                            int64_t k_lo,
                            int64_t k_hi,
                            enum PcTableFormat format,
                            uint32_t precision,
                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PITCHCLASS_H */
