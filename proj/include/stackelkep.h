/* C interface to the stackelkep library. Every function returns a
 * skep_status; on failure skep_last_error() describes the cause. Strings
 * handed out by the library are released with skep_string_free. */
#ifndef STACKELKEP_H
#define STACKELKEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define SKEP_API __attribute__((visibility("default")))
#else
#define SKEP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skep_status {
    SKEP_OK = 0,
    SKEP_MISMATCH = 1,              /* verification ran and the two sides disagree */
    SKEP_ERR_VALIDATION = 2,
    SKEP_ERR_CAP = 3,               /* a resource guard refused the search */
    SKEP_ERR_IO = 4,
    SKEP_ERR_INVALID_ARGUMENT = 5,  /* null handle or out pointer, bad enum */
    SKEP_ERR_INTERNAL = 6,
    SKEP_ERR_PARSE = 7
} skep_status;

typedef struct skep_limits skep_limits;
typedef struct skep_instance skep_instance;
typedef struct skep_formula skep_formula;

/* Message of the last failure on this thread; empty after success. */
SKEP_API const char* skep_last_error(void);
SKEP_API const char* skep_status_name(skep_status status);
SKEP_API void skep_string_free(char* s);

/* limits: defaults, then STACKELKEP_CAPS, then explicit overrides */
SKEP_API skep_status skep_limits_new(skep_limits** out);
SKEP_API skep_status skep_limits_from_env(skep_limits** out);
/* `key=value,...` with keys search_nodes, oracle_nodes, leader_nodes,
 * sat_vars, adversarial_vars */
SKEP_API skep_status skep_limits_apply(skep_limits* limits, const char* spec);
SKEP_API skep_status skep_limits_unbounded(skep_limits* limits);
SKEP_API skep_status skep_limits_get(const skep_limits* limits, const char* key, size_t* out);
SKEP_API void skep_limits_free(skep_limits* limits);

/* instances (JSON) */
SKEP_API skep_status skep_instance_load(const char* path, skep_instance** out);
SKEP_API skep_status skep_instance_parse(const char* json, skep_instance** out);
SKEP_API skep_status skep_instance_to_json(const skep_instance* inst, char** out);
SKEP_API skep_status skep_instance_counts(const skep_instance* inst, size_t* nodes, size_t* leaders,
                                 size_t* arcs);
SKEP_API void skep_instance_free(skep_instance* inst);

/* formulas (DIMACS flavoured, `p cnf` or `p acnf`) */
SKEP_API skep_status skep_formula_load(const char* path, skep_formula** out);
SKEP_API skep_status skep_formula_parse(const char* text, skep_formula** out);
SKEP_API skep_status skep_formula_to_text(const skep_formula* f, char** out);
SKEP_API skep_status skep_formula_is_quantified(const skep_formula* f, int* out);
/* *valid is 1 for a (2,2) formula; profile_json lists occurrences per variable */
SKEP_API skep_status skep_formula_validate_22(const skep_formula* f, int* valid, char** profile_json);
SKEP_API void skep_formula_free(skep_formula* f);

typedef enum skep_mode { SKEP_MODE_EXACT = 0, SKEP_MODE_K2 = 1 } skep_mode;

typedef struct skep_solve_options {
    const skep_limits* limits; /* NULL: defaults */
    skep_mode mode;
    int has_threshold;         /* nonzero: threshold overrides the instance k */
    int64_t threshold;
    int table;                 /* include the full strategy table */
    int pretty;                /* human-readable text instead of JSON */
    unsigned threads;
} skep_solve_options;

SKEP_API void skep_solve_options_init(skep_solve_options* options);

/* report: LeaderReport JSON (or text); packing: the follower packing on the
 * contributed pool, as packing JSON. Either out pointer may be NULL. */
SKEP_API skep_status skep_solve(const skep_instance* inst, const skep_solve_options* options, char** report,
                       char** packing);
SKEP_API skep_status skep_leader_value(const skep_instance* inst, const uint32_t* strategy, size_t count,
                              const skep_limits* limits, int64_t* out);

/* 3-CNF to (2,2); warnings (may be NULL) receive newline-separated notes */
SKEP_API skep_status skep_reduce_sat3_to_sat22(const skep_formula* f, skep_formula** out, char** warnings);
/* adversarial (2,2) formula to the Stackelberg instance */
SKEP_API skep_status skep_reduce_adv_to_kep(const skep_formula* f, skep_instance** out);
/* 3-CNF → (2,2) → adversarialize → instance. A plain CNF has every variable
 * universally quantified. */
SKEP_API skep_status skep_reduce_full(const skep_formula* f, skep_formula** sat22, skep_instance** out,
                             char** warnings);

typedef struct skep_verify_options {
    const skep_limits* limits;
    int has_threshold;
    int64_t threshold;
    int pretty;
    unsigned threads;
} skep_verify_options;

SKEP_API void skep_verify_options_init(skep_verify_options* options);

/* Returns SKEP_MISMATCH (with the verdict still written) when the answers differ. */
SKEP_API skep_status skep_verify(const skep_formula* f, const skep_verify_options* options, char** verdict);
/* brute_sat on the 3-CNF and on its (2,2) image */
SKEP_API skep_status skep_verify_equisat(const skep_formula* f, const skep_verify_options* options,
                                char** verdict);

SKEP_API skep_status skep_gen_kep(size_t nodes, size_t leaders, double density, int K, uint64_t seed,
                         skep_instance** out);
SKEP_API skep_status skep_gen_asat(size_t vars_x, size_t vars_y, size_t clauses, uint64_t seed,
                          skep_formula** out);

/* Gadget classes and cycle types of a packing on a reduced instance. */
SKEP_API skep_status skep_classify(const skep_instance* inst, const char* packing_json, int pretty,
                          char** out);

#ifdef __cplusplus
}
#endif

#endif
