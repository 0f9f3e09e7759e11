#ifndef QUARTIC_EUCLID_H
#define QUARTIC_EUCLID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum QeStatus {
  QE_STATUS_OK = 0,
  QE_STATUS_NULL_POINTER = 1,
  QE_STATUS_INVALID_UTF8 = 2,
  QE_STATUS_UNKNOWN_LABEL = 3,
  QE_STATUS_SEARCH_EXHAUSTED = 4,
  QE_STATUS_VERIFICATION_FAILED = 5,
  QE_STATUS_SCHEMA_ERROR = 6,
  QE_STATUS_INVALID_ARGUMENT = 7,
  QE_STATUS_INTERNAL_ERROR = 8,
  QE_STATUS_PANIC = 9,
} QeStatus;

/**
 * An admissible-pair certificate.
 */
typedef struct QeCertificate QeCertificate;

/**
 * A registry field.
 */
typedef struct QeField QeField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *qe_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string produced by this library and not yet freed.
 */
void qe_string_free(char *s);

/**
 * Number of registry fields.
 */
size_t qe_registry_len(void);

/**
 * Label of the `index`-th registry field.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum QeStatus qe_registry_label(size_t index, char **out);

/**
 * Open a registry field by label (`K_1` .. `K_33`, or a conductor).
 *
 * # Safety
 * `label` must be a NUL-terminated string and `out` valid for writing.
 */
enum QeStatus qe_field_open(const char *label, struct QeField **out);

/**
 * Destroy a field handle.
 *
 * # Safety
 * `field` must be NULL or a handle from [`qe_field_open`] not yet freed.
 */
void qe_field_free(struct QeField *field);

/**
 * Order `g` of the group of roots of unity.
 *
 * # Safety
 * `field` must be a live handle and `out` valid for writing.
 */
enum QeStatus qe_field_torsion_order(const struct QeField *field, uint64_t *out);

/**
 * Field discriminant as a decimal string.
 *
 * # Safety
 * `field` must be a live handle and `out` valid for writing.
 */
enum QeStatus qe_field_discriminant(const struct QeField *field, char **out);

/**
 * The reference `(p1, p2)` recorded for this field.
 *
 * # Safety
 * `field` must be a live handle; `p1` and `p2` valid for writing.
 */
enum QeStatus qe_field_table_pair(const struct QeField *field, uint64_t *p1, uint64_t *p2);

/**
 * Search for an admissible pair among primes up to `prime_bound`, smallest
 * `p2` first. With `assume_class_number_one`, the certificate records the
 * Euclidean conclusion.
 *
 * # Safety
 * `field` must be a live handle and `out` valid for writing.
 */
enum QeStatus qe_search(const struct QeField *field,
                        uint64_t prime_bound,
                        bool assume_class_number_one,
                        struct QeCertificate **out);

/**
 * Destroy a certificate handle.
 *
 * # Safety
 * `cert` must be NULL or a handle from this library not yet freed.
 */
void qe_certificate_free(struct QeCertificate *cert);

/**
 * Rational primes below `P1` and `P2`.
 *
 * # Safety
 * `cert` must be a live handle; `p1` and `p2` valid for writing.
 */
enum QeStatus qe_certificate_pair(const struct QeCertificate *cert, uint64_t *p1, uint64_t *p2);

/**
 * Serialize to the versioned JSON format.
 *
 * # Safety
 * `cert` must be a live handle and `out` valid for writing.
 */
enum QeStatus qe_certificate_to_json(const struct QeCertificate *cert, char **out);

/**
 * Verify a JSON certificate from scratch. With `oracle`, also checks
 * surjectivity by enumeration when the residue groups are small enough.
 * On success `out` (if not NULL) receives the parsed certificate.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` NULL or valid for writing.
 */
enum QeStatus qe_verify_json(const char *json, bool oracle, struct QeCertificate **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUARTIC_EUCLID_H */
