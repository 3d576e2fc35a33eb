/* C interface to the galoisph persistent homology library. */

#ifndef GALOISPH_H
#define GALOISPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define GPH_OK 0

/**
 * A required pointer was null or a string was not valid UTF-8.
 */
#define GPH_ERR_ARGUMENT 1

/**
 * The input text failed to parse.
 */
#define GPH_ERR_PARSE 2

/**
 * The input parsed but violated a structural invariant.
 */
#define GPH_ERR_VALIDATION 3

/**
 * A diagram carried negative mass where a barcode was required.
 */
#define GPH_ERR_NEGATIVE 4

/**
 * A numeric result did not fit the requested machine type.
 */
#define GPH_ERR_OVERFLOW 8

/**
 * An internal invariant failed; the library state is still consistent.
 */
#define GPH_ERR_PANIC 9

/**
 * Compute diagrams through nullities of the structure maps.
 */
#define GPH_ROUTE_KERNEL 0

/**
 * Compute diagrams through a free presentation.
 */
#define GPH_ROUTE_PRESENTATION 1

/**
 * Mobius inversion: recover a derivative from cumulative values.
 */
#define GPH_DIRECTION_INVERT 0

/**
 * Zeta transform: accumulate a derivative back to cumulative values.
 */
#define GPH_DIRECTION_ZETA 1

/**
 * A persistence diagram: signed multiplicities over interval pairs.
 */
typedef struct GphDiagram GphDiagram;

/**
 * A graded simplicial complex over one or two parameters.
 */
typedef struct GphFiltration GphFiltration;

/**
 * A persistence module: dimensions and structure maps over a poset.
 */
typedef struct GphModule GphModule;

/**
 * A finite partially ordered set.
 */
typedef struct GphPoset GphPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library version as a static string; do not free it.
 */
const char *gph_version(void);

/**
 * The message behind the most recent failure on this thread, or null when
 * the last call succeeded. The caller owns the returned string.
 */
char *gph_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `ptr` must be null or a pointer previously returned by a `gph_*` function
 * that hands ownership to the caller, and must not be used afterwards.
 */
void gph_string_free(char *ptr);

/**
 * Parse a poset from its text form (`elt` and `le` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string.
 */
struct GphPoset *gph_poset_parse(const char *text);

/**
 * Number of elements, or -1 on a null handle.
 *
 * # Safety
 * `poset` must be null or a live handle from this library.
 */
int64_t gph_poset_len(const struct GphPoset *poset);

/**
 * Render a poset back to its text form. The caller owns the string.
 *
 * # Safety
 * `poset` must be null or a live handle from this library.
 */
char *gph_poset_render(const struct GphPoset *poset);

/**
 * Release a poset handle.
 *
 * # Safety
 * `poset` must be null or a live handle, and must not be used afterwards.
 */
void gph_poset_free(struct GphPoset *poset);

/**
 * Parse a filtration from its text form (`params`, `grid`, `s` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string.
 */
struct GphFiltration *gph_filtration_parse(const char *text);

/**
 * Release a filtration handle.
 *
 * # Safety
 * `filtration` must be null or a live handle, and must not be used afterwards.
 */
void gph_filtration_free(struct GphFiltration *filtration);

/**
 * Degree-`dim` homology of a filtration over F_field, as a new module handle.
 *
 * # Safety
 * `filtration` must be a live handle from this library.
 */
struct GphModule *gph_homology_module(const struct GphFiltration *filtration,
                                      uint32_t dim,
                                      uint64_t field);

/**
 * Parse a module (`dim` and `map` lines) over a poset and field.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `poset` a live handle.
 */
struct GphModule *gph_module_parse(const char *text, const struct GphPoset *poset, uint64_t field);

/**
 * Render a module back to its text form. The caller owns the string.
 *
 * # Safety
 * `module` must be null or a live handle from this library.
 */
char *gph_module_render(const struct GphModule *module);

/**
 * Dimension of the space at the named element, or -1 on failure.
 *
 * # Safety
 * `module` must be a live handle and `element` a NUL-terminated string.
 */
int64_t gph_module_dim(const struct GphModule *module, const char *element);

/**
 * Release a module handle.
 *
 * # Safety
 * `module` must be null or a live handle, and must not be used afterwards.
 */
void gph_module_free(struct GphModule *module);

/**
 * The persistence diagram of a module along the requested route
 * (`GPH_ROUTE_KERNEL` or `GPH_ROUTE_PRESENTATION`).
 *
 * # Safety
 * `module` must be a live handle from this library.
 */
struct GphDiagram *gph_diagram_compute(const struct GphModule *module, int32_t route);

/**
 * The rank diagram of a module, over the reversed-containment interval order.
 *
 * # Safety
 * `module` must be a live handle from this library.
 */
struct GphDiagram *gph_rank_diagram(const struct GphModule *module);

/**
 * Render a diagram to its text form; `poset_ref` fills the `poset` line.
 * The caller owns the string.
 *
 * # Safety
 * `diagram` must be a live handle and `poset_ref` a NUL-terminated string.
 */
char *gph_diagram_render(const struct GphDiagram *diagram, const char *poset_ref);

/**
 * Sum of canonical multiplicities, or -1 on failure or overflow.
 *
 * # Safety
 * `diagram` must be null or a live handle from this library.
 */
int64_t gph_diagram_total_mass(const struct GphDiagram *diagram);

/**
 * Whether two diagrams are equivalent (equal canonical representatives):
 * 1 yes, 0 no, negative on failure.
 *
 * # Safety
 * Both arguments must be live handles from this library.
 */
int32_t gph_diagram_equivalent(const struct GphDiagram *left, const struct GphDiagram *right);

/**
 * Release a diagram handle.
 *
 * # Safety
 * `diagram` must be null or a live handle, and must not be used afterwards.
 */
void gph_diagram_free(struct GphDiagram *diagram);

/**
 * Bottleneck distance between two barcode diagrams. On success writes the
 * value as `numerator/denominator` (or sets `infinite`) and returns GPH_OK.
 *
 * # Safety
 * The diagram arguments must be live handles; the out parameters must be
 * null or valid destinations.
 */
int32_t gph_bottleneck(const struct GphDiagram *left,
                       const struct GphDiagram *right,
                       int64_t *numerator,
                       int64_t *denominator,
                       uint8_t *infinite);

/**
 * Mobius-invert or zeta-transform an integer function given as text
 * (`element value` lines) over a poset. The caller owns the result string.
 *
 * # Safety
 * `poset` must be a live handle and `text` a NUL-terminated string.
 */
char *gph_mobius_transform(const struct GphPoset *poset, const char *text, int32_t direction);

/**
 * Run the randomized self-test suites. Returns GPH_OK when every suite
 * passes, GPH_ERR_VALIDATION for a bad field, and 7 on suite failure.
 */
int32_t gph_selftest(uint64_t seed, uint64_t iters, uint64_t field);

/**
 * The full self-test report. The caller owns the string.
 */
char *gph_selftest_report(uint64_t seed, uint64_t iters, uint64_t field);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GALOISPH_H */
