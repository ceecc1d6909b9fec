#ifndef WORKBENCH_H
#define WORKBENCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
#define WB_API extern "C" __attribute__((visibility("default")))
#else
#define WB_API __attribute__((visibility("default")))
#endif

#define WB_SCHEMA_VERSION 1

typedef enum {
    WB_OK = 0,
    WB_ERR_PARSE = 1,
    WB_ERR_PRECONDITION = 2,
    WB_ERR_INVALID = 3,
    WB_ERR_BUDGET = 4,
    WB_ERR_UNDETERMINED = 5,
    WB_ERR_IO = 6,
    WB_ERR_ARGUMENT = 7,
    WB_ERR_INTERNAL = 8
} wb_status;

typedef enum { WB_FORMAT_JSON = 0, WB_FORMAT_DOT = 1 } wb_format;
typedef enum { WB_SCOPE_LITERAL = 0, WB_SCOPE_CORE = 1 } wb_scope;
typedef enum { WB_FAMILY_DIHEDRAL = 0, WB_FAMILY_TORUS = 1 } wb_family;

#define WB_HINT_UNIT_SUMMAND 1u

typedef struct wb_presentation wb_presentation;
typedef struct wb_coxeter wb_coxeter;
typedef struct wb_graph wb_graph;
typedef struct wb_coeff wb_coeff;

/* Message of the last failed call on this thread; empty when none. */
WB_API const char* wb_last_error(void);
WB_API const char* wb_version(void);
/* Frees strings returned through char** out parameters. */
WB_API void wb_string_free(char* s);

/* Every char** json output is a JSON object with "schema_version". Budgets of 0 select the defaults. */

WB_API int wb_presentation_parse(const char* text, wb_presentation** out);
WB_API int wb_presentation_fixture(const char* name, wb_presentation** out);
WB_API void wb_presentation_free(wb_presentation* p);
WB_API int wb_presentation_text(const wb_presentation* p, char** out);
WB_API int wb_presentation_check(const wb_presentation* p, char** json);

WB_API int wb_word_equal(const wb_presentation* p, const char* x, const char* y, size_t budget, char** json);
WB_API int wb_reverse(const wb_presentation* p, const char* signed_word, size_t budget, int trace, char** json);
WB_API int wb_lcm(const wb_presentation* p, const char* x, const char* y, size_t budget, char** json);
WB_API int wb_divides(const wb_presentation* p, const char* x, const char* z, size_t budget, char** json);
WB_API int wb_cube(const wb_presentation* p, size_t budget, char** json);
WB_API int wb_homogeneity(const wb_presentation* p, char** json);
WB_API int wb_left_reversible(const wb_presentation* p, size_t closure_bound, size_t budget, char** json);
/* w may be NULL to search words up to length_bound. */
WB_API int wb_garside_w(const wb_presentation* p, const char* w, size_t length_bound, size_t test_length,
                        size_t budget, char** json);

/* type is "A3", "B3", "I2(5)", ... */
WB_API int wb_coxeter_create(const char* type, wb_coxeter** out);
/* Rows of integers giving the Coxeter matrix. */
WB_API int wb_coxeter_from_matrix(const char* text, wb_coxeter** out);
WB_API void wb_coxeter_free(wb_coxeter* c);
WB_API int wb_artin_nf(const wb_coxeter* c, const char* word, char** json);
/* t may be NULL for the full generating set; subsets are written "{s1,s2}". */
WB_API int wb_artin_equiv(const wb_coxeter* c, const char* t, const char* from, const char* to, char** json);
WB_API int wb_artin_count_nf(const wb_coxeter* c, size_t n, char** json);
WB_API int wb_artin_delta(const wb_coxeter* c, size_t n, char** json);
/* Randomized property checks: normal-form idempotence and join against reversing lcm. */
WB_API int wb_artin_selfcheck(const wb_coxeter* c, size_t samples, uint64_t seed, char** json);

WB_API int wb_graph_builtin(wb_family family, size_t a, size_t b, wb_graph** out);
WB_API int wb_graph_case1(const wb_presentation* p, int pruned, wb_graph** out);
WB_API int wb_graph_case2(const wb_presentation* p, const char* w, int pruned, wb_graph** out);
WB_API int wb_graph_nonreversible(const wb_presentation* p, wb_scope scope, size_t extra_loops, wb_graph** out);
WB_API int wb_graph_import_json(const char* text, wb_graph** out);
WB_API int wb_graph_prune(const wb_graph* g, wb_graph** out);
WB_API void wb_graph_free(wb_graph* g);
WB_API size_t wb_graph_vertex_count(const wb_graph* g);
WB_API size_t wb_graph_edge_count(const wb_graph* g);
WB_API int wb_graph_export(const wb_graph* g, wb_format format, char** out);
WB_API int wb_graph_k(const wb_graph* g, char** json);

WB_API int wb_coeff_fixture(const char* name, wb_coeff** out);
WB_API int wb_coeff_parse(const char* json_text, wb_coeff** out);
WB_API void wb_coeff_free(wb_coeff* c);
/* a = m for dihedral, (a, b) = (p, q) for torus. Succeeds with "determined": false when candidates remain. */
WB_API int wb_ktheory_pipeline(wb_family family, size_t a, size_t b, const wb_coeff* coeff, unsigned hints,
                               char** json);
WB_API int wb_ktheory_boundary(const wb_presentation* p, int infinite_alphabet, char** json);

#endif
