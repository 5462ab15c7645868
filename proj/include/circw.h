/* circw: exact repetition exponents, circular critical exponents,
 * synchronizing uniform morphisms, and exhaustive avoidance searches.
 *
 * C API over the C++ core. All objects are opaque handles; every call
 * returns a status code, with the failure message available through
 * cw_last_error() on the calling thread. Strings returned through char**
 * out-parameters are heap-allocated JSON or plain text and must be released
 * with cw_string_free().
 */
#ifndef CIRCW_H
#define CIRCW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cw_status {
  CW_OK = 0,
  CW_ERR_ARGUMENT = 1,     /* bad or out-of-range argument */
  CW_ERR_PARSE = 2,        /* unparsable text input */
  CW_ERR_EMPTY_WORD = 3,   /* operation undefined on the empty word */
  CW_ERR_ALPHABET = 4,     /* symbol outside the declared alphabet */
  CW_ERR_PRECONDITION = 5, /* documented precondition violated */
  CW_ERR_BOUND = 6,        /* configured brute-force bound exceeded */
  CW_ERR_IO = 7,           /* file could not be read or written */
  CW_ERR_INTERNAL = 8
} cw_status;

typedef struct cw_word cw_word;
typedef struct cw_morphism cw_morphism;

const char* cw_version(void);
const char* cw_status_str(cw_status s);
const char* cw_last_error(void);
void cw_string_free(char* s);

/* ---- words ---------------------------------------------------------- */

/* Digits map to symbols directly; letters map by first appearance, so
 * "alfalfa" and "dividing" work verbatim. Mixing both is rejected. */
cw_status cw_word_parse(const char* text, cw_word** out);
void cw_word_free(cw_word* w);
cw_status cw_word_render(const cw_word* w, char** out);
size_t cw_word_length(const cw_word* w);
int cw_word_alphabet_size(const cw_word* w);

cw_status cw_shortest_period(const cw_word* w, size_t* period);
cw_status cw_exponent(const cw_word* w, long long* num, long long* den);

/* JSON: {"exponent": "a/b", "witness": {...}}; circular selects the
 * circular critical exponent with a (t,u,v) witness. */
cw_status cw_critical_exponent(const cw_word* w, int circular, char** json_out);

/* verdict: 1 = free, 0 = violation (witness in JSON). strict = forbid only
 * exponents above alpha; otherwise exponents equal to alpha also fail. */
cw_status cw_power_free(const cw_word* w, long long alpha_num, long long alpha_den, int strict,
                        int circular, int* verdict, char** json_out);

cw_status cw_conjugates(const cw_word* w, char** json_out);
cw_status cw_circular_factors(const cw_word* w, size_t max_len, char** json_out);
cw_status cw_conjugate_characterization(const cw_word* w, size_t bound, int* holds);

/* ---- morphisms ------------------------------------------------------ */

/* Builtins: "mu", "psi", "thue-morse". File format: "k_source k_target q"
 * header line, then one digit-string image per source symbol. */
cw_status cw_morphism_builtin(const char* name, cw_morphism** out);
cw_status cw_morphism_parse(const char* text, cw_morphism** out);
cw_status cw_morphism_load(const char* path, cw_morphism** out);
void cw_morphism_free(cw_morphism* m);
cw_status cw_morphism_info(const cw_morphism* m, char** json_out);
cw_status cw_morphism_apply(const cw_morphism* m, const cw_word* w, cw_word** out);
cw_status cw_morphism_fixed_point(const cw_morphism* m, unsigned seed, size_t n, cw_word** out);
/* JSON: {"synchronizing": bool, "strongly_synchronizing": bool, ...counterexamples} */
cw_status cw_morphism_check(const cw_morphism* m, char** json_out);
cw_status cw_factor_set(const cw_morphism* m, unsigned seed, size_t length, char** json_out);
cw_status cw_lift_power_freeness(const cw_morphism* m, unsigned seed, unsigned n, char** json_out);
cw_status cw_power_alignment(const cw_morphism* m, const cw_word* w, unsigned n, int* holds);

/* The central ternary word mu(psi^omega(0)). */
cw_status cw_main_word_prefix(size_t n, cw_word** out);
cw_status cw_main_word_factor_set(size_t length, char** json_out);

/* ---- search --------------------------------------------------------- */

/* config JSON: {"k", "alpha", "strict", "circular", "avoid_squares_below",
 * "max_length", "symmetry_reduction", "threads", "split_depth"}.
 * checkpoint_path: written periodically; pass resume = 1 to continue from
 * it. progress may be NULL; returning nonzero requests a graceful stop. */
typedef int (*cw_progress_fn)(unsigned long long nodes, void* user);
cw_status cw_search(const char* config_json, const char* checkpoint_path, int resume,
                    cw_progress_fn progress, void* user, char** json_out);

cw_status cw_product_exponent(const cw_word* w, unsigned parts, size_t max_total_len,
                              char** json_out);
cw_status cw_product_exponent_morphic(const cw_morphism* m, unsigned seed, unsigned parts,
                                      size_t max_total_len, char** json_out);

/* ---- claim verification --------------------------------------------- */

/* claim_id: one of the registered claims or "all"; JSON array of reports.
 * verdict: 1 when every executed claim passed. */
cw_status cw_verify(const char* claim_id, int skip_long, int threads, int* verdict,
                    char** json_out);
cw_status cw_claim_ids(char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* CIRCW_H */
