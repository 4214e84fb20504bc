#ifndef GROUPSCOPE_H
#define GROUPSCOPE_H

/* C interface to the finite-group analysis engine.
 *
 * Every function that can fail returns a gs_status; GS_OK means success.
 * On failure gs_last_error() returns a human-readable message for the
 * calling thread. Strings handed out through char** parameters are owned
 * by the caller and must be released with gs_string_free().
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gs_group gs_group;

typedef enum gs_status {
  GS_OK = 0,
  GS_ERR_BAD_PARAMETER = 1, /* malformed spec text, unknown id, bad argument */
  GS_ERR_NOT_A_GROUP = 2,   /* table fails the group axioms */
  GS_ERR_ORDER_CAP = 3,     /* an enumeration cap was exceeded */
  GS_ERR_IO = 4,            /* file could not be read or written */
  GS_ERR_SCHEMA = 5,        /* JSON input does not match the expected shape */
  GS_ERR_DOMAIN = 6,        /* input outside the statement's domain */
  GS_ERR_INTERNAL = 7,      /* invariant violation inside the library */
  GS_ERR_OOM = 8
} gs_status;

/* Message describing the most recent failure on this thread ("" if none).
 * Valid until the next library call on the same thread. */
const char* gs_last_error(void);

const char* gs_version(void);

/* --- construction --------------------------------------------------------
 *
 * Constructor expressions: C(n), Ab(p; e1,e2,...), D(n), Q(2^k), SD(2^k),
 * Mod(p, k), Heis(p), joined with "x" for direct products, e.g.
 * "Q(8) x C(2)". */
gs_status gs_group_from_spec(const char* spec, gs_group** out);

/* JSON Cayley tables: an object with "order" (int), "table" (order x order
 * array of 0-based indices), and optional "labels". The identity need not
 * be at index 0; elements are relabelled if necessary. */
gs_status gs_group_from_cayley_file(const char* path, gs_group** out);
gs_status gs_group_from_cayley_json(const char* json_text, gs_group** out);

void gs_group_free(gs_group* g);

/* Order of the group, or 0 if g is NULL. */
int gs_group_order(const gs_group* g);

/* --- analysis ------------------------------------------------------------ */

/* Structural summary as JSON: order, abelian flag, exponent, nilpotency
 * class, center (order, members, abelian invariants), lower central series
 * orders, invariants of the last series term, purely-non-abelian flag. */
gs_status gs_group_info_json(const gs_group* g, char** out_json);

/* Automorphism listing as JSON. filter is NULL or "" for the full
 * automorphism group, "central" for the subgroup acting trivially on both
 * G/Z and Z, "class:<n>" for the automorphisms moving each element inside
 * its gamma_{n+1}-coset, or "box:<M>,<N>" where the automorphisms send
 * g^-1 f(g) into M and fix N pointwise. Subgroup tokens for M and N:
 * trivial | center | gamma<k> | full. */
gs_status gs_group_aut_json(const gs_group* g, const char* filter, char** out_json);

/* Run one statement checker against the group. theorem_id is one of the ids
 * in gs_theorem_ids(); n > 0 overrides the series index where the statement
 * takes one; spec_name labels the report (may be NULL). The result is a
 * JSON document {"schema":1,"reports":[...]}. */
gs_status gs_check_json(const gs_group* g, const char* spec_name, const char* theorem_id,
                        int n, char** out_json);

/* Run checkers across the built-in catalog up to max_order. theorem_ids is
 * a comma-separated list, or "all". out_json and out_csv may each be NULL
 * when that serialization is not wanted. *out_any_failed is set to 1 when
 * some report has its hypotheses satisfied but its conclusion false. */
gs_status gs_corpus_json(int max_order, const char* theorem_ids, char** out_json,
                         char** out_csv, int* out_any_failed);

/* Comma-separated list of the known statement ids (static storage). */
const char* gs_theorem_ids(void);

void gs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* GROUPSCOPE_H */
