#ifndef GOVERNING_GOVERNING_H
#define GOVERNING_GOVERNING_H

#include <stddef.h>
#include <stdint.h>

#if defined(GOV_BUILDING_LIBRARY)
#define GOV_API __attribute__((visibility("default")))
#else
#define GOV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gov_status {
  GOV_OK = 0,
  GOV_INVALID_ARGUMENT,
  GOV_NOT_PRIME,
  GOV_NON_SQUAREFREE,
  GOV_DISALLOWED_D,
  GOV_MALFORMED_FIELD,
  GOV_AMBIGUOUS_PLACE,
  GOV_NO_SUCH_PLACE,
  GOV_MALFORMED_TOKEN,
  GOV_ZERO_ELEMENT,
  GOV_FIELD_MISMATCH,
  GOV_DISCRIMINANT_TOO_LARGE,
  GOV_WILD_PLACE,
  GOV_AVOIDANCE_FAILURE,
  GOV_DIMENSION_MISMATCH,
  GOV_DELTA_ZERO,
  GOV_WRONG_PRIME_FOR_REAL,
  GOV_NON_UNIT_VALUATION,
  GOV_DUPLICATE_PLACE,
  GOV_BASIS_NOT_COPRIME,
  GOV_SET_TOO_LARGE,
  GOV_LEDGER_MISMATCH,
  GOV_NOT_RATIONAL_BASE,
  GOV_BAD_CONGRUENCE,
  GOV_NON_COPRIME_MODULUS,
  GOV_ARCHIMEDEAN_REQUIRES_P2,
  GOV_INTERNAL,
  /* the corpus or sweep ran but some case failed */
  GOV_VERIFICATION_FAILED,
} gov_status;

typedef struct gov_context gov_context;
typedef struct gov_field gov_field;

/* Strings returned through char** out-parameters are owned by the caller
   and released with gov_string_free. */

GOV_API const char* gov_version(void);
GOV_API const char* gov_status_name(gov_status status);
/* Nonzero for failures of an internal consistency check, as opposed to bad input. */
GOV_API int gov_status_is_invariant_failure(gov_status status);
GOV_API void gov_string_free(char* s);

/* JSON {"status", "code", "message"} for the last failure on this thread, or
   NULL after a success. Owned by the library; valid until the next call. */
GOV_API const char* gov_last_error(void);

/* cache_dir may be NULL (no cache). */
GOV_API gov_status gov_context_new(const char* cache_dir, gov_context** out);
GOV_API void gov_context_free(gov_context* ctx);

/* request_json: {"field", "p", "places", "emit_matrix", "verify", "subsets",
   "swap_branches", "generator_rank", "cap", "cache"}. A "cache" key
   overrides the context directory. */
GOV_API gov_status gov_analyze(gov_context* ctx, const char* request_json, char** report_json);

/* spec_json: {"dmin", "dmax", "primes", "samples", "max_places",
   "norm_bound", "seed", "invariance"}; every key optional. */
GOV_API gov_status gov_verify_corpus(gov_context* ctx, const char* spec_json, char** summary_json);

/* Sweep over Q with p = 2 and all squarefree odd |D| <= dmax. */
GOV_API gov_status gov_intro_sweep(gov_context* ctx, int64_t dmax, char** summary_json);

/* spec: "Q", "d=<int>" or a bare squarefree integer. */
GOV_API gov_status gov_field_new(const char* spec, gov_field** out);
GOV_API void gov_field_free(gov_field* field);
/* Discriminant, signature, class group and units. */
GOV_API gov_status gov_field_info(const gov_field* field, char** info_json);

/* Exponent e in [0, p) of the p-th power residue symbol of (a + b*omega)/den
   at the place named by token. a, b and den are decimal strings. */
GOV_API gov_status gov_power_residue_symbol(const gov_field* field, const char* place_token, const char* a,
                                            const char* b, const char* den, uint64_t p,
                                            unsigned generator_rank, uint64_t* exponent);

#ifdef __cplusplus
}
#endif

#endif
