#ifndef COTORSION_LAB_H
#define COTORSION_LAB_H

/* C interface to the cotorsion library. Handles are opaque; structured
   results come back as JSON strings owned by the caller (ctl_string_free).
   Every call returns a ctl_error; on failure ctl_last_error() describes it. */

#include <stdint.h>

#if defined(CTL_BUILDING) && defined(__GNUC__)
#define CTL_API __attribute__((visibility("default")))
#else
#define CTL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ctl_category ctl_category;
typedef struct ctl_twin ctl_twin;

typedef enum {
  CTL_OK = 0,
  CTL_E_ARGUMENT = 1,      /* bad input: syntax, ids, schema */
  CTL_E_IO = 2,            /* file could not be read or written */
  CTL_E_REFUSED = 3,       /* enumeration past the dimension cap */
  CTL_E_DECOMPOSITION = 4, /* decomposition inconclusive */
  CTL_E_INTERNAL = 5,      /* independent routes disagreed */
  CTL_E_STATE = 6          /* call not valid for this handle (e.g. twin not verified) */
} ctl_error;

/* Thread-local; valid until the next failing call on this thread. */
CTL_API const char* ctl_last_error(void);
CTL_API void ctl_string_free(char* s);
CTL_API const char* ctl_version(void);

/* relations: "1-5,2-6" (empty or NULL for none). */
CTL_API ctl_error ctl_category_generate(int n, const char* relations, int field_char, ctl_category** out);
CTL_API ctl_error ctl_category_from_json(const char* text, ctl_category** out);
CTL_API ctl_error ctl_category_to_json(const ctl_category* c, char** out);
/* JSON array of the indecomposables in stacked notation. */
CTL_API ctl_error ctl_category_census(const ctl_category* c, char** out);
CTL_API void ctl_category_set_seed(ctl_category* c, uint64_t seed);
CTL_API void ctl_category_free(ctl_category* c);

/* pairs_text: a pairs file. A relative category path resolves against
   base_dir; a non-NULL category overrides it. */
CTL_API ctl_error ctl_twin_open(const char* pairs_text, const char* base_dir, const ctl_category* category,
                        int bound_mult, int dim_cap, uint64_t seed, ctl_twin** out);
CTL_API void ctl_twin_free(ctl_twin* t);

/* Results below are verdict JSON: {status, summary, route?, bounds, certificate?}. */
CTL_API ctl_error ctl_twin_verify(ctl_twin* t, char** verdict);
/* Membership tables and heart classes; verifies first and needs Holds. */
CTL_API ctl_error ctl_twin_heart(ctl_twin* t, int with_witnesses, char** out);
CTL_API ctl_error ctl_twin_check_integral(ctl_twin* t, char** verdict);
CTL_API ctl_error ctl_twin_check_abelian(ctl_twin* t, char** verdict);
CTL_API ctl_error ctl_twin_probe(ctl_twin* t, char** verdict);
/* Every indecomposable of a is an extension of x by y; class expressions
   over the names in the pairs file. */
CTL_API ctl_error ctl_twin_star(ctl_twin* t, const char* a, const char* x, const char* y, char** verdict);

/* *ok = 1 when the certificate replays; otherwise *reason says why. */
CTL_API ctl_error ctl_replay(const char* certificate, int* ok, char** reason);

#ifdef __cplusplus
}
#endif

#endif
