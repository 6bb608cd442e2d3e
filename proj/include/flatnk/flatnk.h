/* Copyright 2026 The flatnk Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/**
 * @file flatnk.h
 * @brief C interface to the flatnk library.
 *
 * All objects are opaque handles created by a *_create / *_from_json /
 * operation function and released with the matching *_free. Every function
 * returning fnk_status leaves a description of the most recent failure in
 * fnk_last_error() (per thread). Strings returned through char** are owned by
 * the caller and released with fnk_string_free.
 *
 * Indices in this interface are 1-based, as in the file formats.
 */

#ifndef FLATNK_FLATNK_H
#define FLATNK_FLATNK_H

#include <stddef.h>
#include <stdint.h>

#if defined(FLATNK_BUILDING_LIBRARY)
#define FNK_API __attribute__((visibility("default")))
#else
#define FNK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fnk_status {
  FNK_OK = 0,
  FNK_ERR_PARSE = 1,        /* malformed input text */
  FNK_ERR_INVALID = 2,      /* argument out of range or inconsistent */
  FNK_ERR_INADMISSIBLE = 3, /* form fails condition (i) or (ii) where admissibility is required */
  FNK_ERR_NUMERIC = 4,      /* singular group element, degenerate pairing */
  FNK_ERR_INTERNAL = 5,
  FNK_ERR_NULL = 6          /* a required pointer argument was NULL */
} fnk_status;

typedef enum fnk_form_kind { FNK_FORM_REAL = 0, FNK_FORM_COMPLEX = 1 } fnk_form_kind;

typedef struct fnk_real_form fnk_real_form;
typedef struct fnk_complex_form fnk_complex_form;
typedef struct fnk_realization fnk_realization;
typedef struct fnk_config fnk_config;

FNK_API const char* fnk_version(void);
FNK_API const char* fnk_last_error(void);
FNK_API const char* fnk_status_name(fnk_status status);
FNK_API void fnk_string_free(char* s);

/* ---- real three-forms on C^{k,l} ---- */

FNK_API fnk_status fnk_real_form_create(int k, int l, fnk_real_form** out);
FNK_API fnk_status fnk_real_form_from_json(const char* text, fnk_real_form** out);
FNK_API fnk_status fnk_real_form_to_json(const fnk_real_form* form, char** out);
FNK_API fnk_status fnk_real_form_space(const fnk_real_form* form, int* k, int* l);
FNK_API fnk_status fnk_real_form_set(fnk_real_form* form, int a, int b, int c, double value);
FNK_API fnk_status fnk_real_form_coeff(const fnk_real_form* form, int a, int b, int c, double* out);
FNK_API void fnk_real_form_free(fnk_real_form* form);

/* ---- complex three-forms on C^m ---- */

FNK_API fnk_status fnk_complex_form_create(int m, fnk_complex_form** out);
FNK_API fnk_status fnk_complex_form_from_json(const char* text, fnk_complex_form** out);
FNK_API fnk_status fnk_complex_form_to_json(const fnk_complex_form* form, char** out);
FNK_API fnk_status fnk_complex_form_dim(const fnk_complex_form* form, int* m);
FNK_API fnk_status fnk_complex_form_set(fnk_complex_form* form, int i, int j, int k, double re, double im);
FNK_API fnk_status fnk_complex_form_coeff(const fnk_complex_form* form, int i, int j, int k, double* re,
                                          double* im);
FNK_API void fnk_complex_form_free(fnk_complex_form* form);

/* Which of the two file formats a document uses. */
FNK_API fnk_status fnk_detect_form_kind(const char* text, fnk_form_kind* out);

/* ---- run configuration ---- */

FNK_API fnk_status fnk_config_create(fnk_config** out);
FNK_API fnk_status fnk_config_set_samples(fnk_config* cfg, size_t samples);
FNK_API fnk_status fnk_config_set_radius(fnk_config* cfg, double radius);
FNK_API fnk_status fnk_config_set_seed(fnk_config* cfg, uint64_t seed);
/* FNK_ERR_INVALID for an unknown name or a negative value. */
FNK_API fnk_status fnk_config_set_tolerance(fnk_config* cfg, const char* name, double value);
FNK_API fnk_status fnk_config_get_tolerance(const fnk_config* cfg, const char* name, double* out);
/* JSON array of the known tolerance names. */
FNK_API fnk_status fnk_config_tolerance_names(char** out);
FNK_API void fnk_config_free(fnk_config* cfg);

/* ---- construction ---- */

FNK_API fnk_status fnk_realize(const fnk_complex_form* zeta, fnk_realization** out);
/* A copy of eta; the caller frees it. */
FNK_API fnk_status fnk_realization_eta(const fnk_realization* r, fnk_real_form** out);
/* {"L": subspace, "Lprime": subspace}, each {"dim", "basis": [column, ...]}. */
FNK_API fnk_status fnk_realization_basis_json(const fnk_realization* r, char** out);
/* Input form, dimensions, strictness and support data of the construction. */
FNK_API fnk_status fnk_realization_manifest_json(const fnk_realization* r, char** out);
FNK_API void fnk_realization_free(fnk_realization* r);

/* ---- reports; cfg may be NULL for defaults ---- */

/* Conditions (i), (ii) and support analysis. *admissible is 1 or 0. */
FNK_API fnk_status fnk_validate(const fnk_real_form* eta, const fnk_config* cfg, int* admissible, char** report);
/* Admissibility plus the full identity battery; *pass is 1 iff everything holds. */
FNK_API fnk_status fnk_verify(const fnk_real_form* eta, const fnk_config* cfg, int* pass, char** report);
/* De Rham splitting. FNK_ERR_INADMISSIBLE for inadmissible input. */
FNK_API fnk_status fnk_split(const fnk_real_form* eta, const fnk_config* cfg, int* pass, char** report);
FNK_API fnk_status fnk_invariants(const fnk_complex_form* zeta, const fnk_config* cfg, char** report);

/* ---- GL_m(C) ---- */

/* g is m*m complex entries, row-major, as interleaved (re, im) pairs: 2*m*m doubles. */
FNK_API fnk_status fnk_act(const double* g, const fnk_complex_form* zeta, fnk_complex_form** out);
/* {"verdict": "equivalent"|"inequivalent"|"unknown", "reason", "witness": [[[re, im], ...], ...] | null}. */
FNK_API fnk_status fnk_equivalent(const fnk_complex_form* first, const fnk_complex_form* second,
                                  const fnk_config* cfg, char** report);

#ifdef __cplusplus
}
#endif

#endif /* FLATNK_FLATNK_H */
