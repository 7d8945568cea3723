/* C interface to the Mumford degeneration library.
 *
 * The library computes combinatorial models of multivariable Mumford
 * degenerations of principally polarized abelian varieties: theta series,
 * central-fiber stratifications and relations, singularity classification,
 * Delaunay/Voronoi decompositions, monodromy weight data, and the two-stage
 * semistable resolution of monomial base changes.
 *
 * Conventions:
 *   - Handles are opaque; free them with the matching *_free call.
 *   - Structured inputs and outputs are JSON strings. Output strings are
 *     heap-allocated; release them with mmf_string_free.
 *   - Functions return MMF_OK on success. On failure *err (when provided)
 *     receives a message, also to be released with mmf_string_free.
 */
#ifndef MUMFORD_H
#define MUMFORD_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mmf_data mmf_data; /* a Mumford configuration (opaque) */

typedef enum {
  MMF_OK = 0,
  MMF_EVALIDATION = 2, /* malformed or inconsistent input */
  MMF_EREFUSED = 3,    /* operation refused (immersed faces, window failure) */
  MMF_EINTERNAL = 4
} mmf_status;

const char* mmf_version(void);

/* --- configuration handles ---------------------------------------------- */

/* Parse a configuration from JSON: {g, k, d, sections: [...], name}. */
mmf_data* mmf_data_parse(const char* json, char** err);

/* Load a built-in example: tate, theta1, theta3, shifted-theta, r10,
 * mon-sep. */
mmf_data* mmf_example(const char* name, char** err);

void mmf_data_free(mmf_data* data);

/* The configuration as canonical JSON. */
char* mmf_data_to_json(const mmf_data* data);

/* Names of the built-in examples as a JSON array. */
char* mmf_example_names(void);

/* --- reports -------------------------------------------------------------*/

/* Summary + singularity report + K-triviality + dual complex. */
mmf_status mmf_describe(const mmf_data* data, char** json_out, char** err);

/* Stratification over the 1-based coordinate subset "1,3". */
mmf_status mmf_strata(const mmf_data* data, const char* indices, char** json_out, char** err);

/* Overgraph face records with dual cones. */
mmf_status mmf_faces(const mmf_data* data, char** json_out, char** err);

/* Theta expansion: cls like "0/1" (1-dim) or "0/1,1/2"; format "json" or
 * "text". */
mmf_status mmf_theta(const mmf_data* data, const char* cls, long weight, long trunc,
                     const char* format, char** out, char** err);

/* Central-fiber relations mod (u) in the given weight and degree. */
mmf_status mmf_relations(const mmf_data* data, long weight, long degree, const char* format,
                         char** out, char** err);

/* --- standalone computations --------------------------------------------- */

/* Delaunay decomposition of a positive-definite form "[[4,1],[1,3]]". */
mmf_status mmf_delaunay(const char* form_json, char** json_out, char** err);

/* Voronoi cell of the origin for a positive-definite form. */
mmf_status mmf_voronoi_cell(const char* form_json, char** json_out, char** err);

/* Delaunay-equality predicate for two forms. Writes "true"/"false". */
mmf_status mmf_same_delaunay(const char* form1_json, const char* form2_json, char** json_out,
                             char** err);

/* Monodromy weight report from {"g": n, "Ns": [matrices]}. */
mmf_status mmf_weights(const char* input_json, char** json_out, char** err);

/* --- base change and resolution ------------------------------------------ */

/* Pullback along u_i = prod w_j^{R_ij}; matrix_json like "[[2,1],[0,4],[3,1]]".
 * The returned handle remembers the map for a later mmf_resolve. */
mmf_status mmf_basechange(const mmf_data* data, const char* matrix_json, mmf_data** out,
                          char** err);

/* Two-stage resolution of a base-changed configuration. separation <= 0
 * selects the default bound. The handle must carry a base-change map (from
 * mmf_basechange or example metadata). */
mmf_status mmf_resolve(const mmf_data* data, long separation, char** json_out, char** err);

/* --- figures -------------------------------------------------------------- */

/* SVG of the joint bending complex (dimension <= 2). */
mmf_status mmf_svg(const mmf_data* data, char** svg_out, char** err);

void mmf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* MUMFORD_H */
