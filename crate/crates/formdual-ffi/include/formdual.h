/* C ABI for the formdual library.
 *
 * Objects cross the boundary as opaque handles; every function returns an
 * fd_status code and writes results through out-pointers. Covectors are
 * dense coefficient arrays over the increasing-multi-index basis in
 * ascending mask order; fd_basis_size(n, degree) gives the expected length.
 *
 * Kept in sync with src/lib.rs (regenerate with cbindgen where available).
 */

#ifndef FORMDUAL_H
#define FORMDUAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fd_status {
  FD_OK = 0,
  FD_ERR_NULL_ARGUMENT = 1,
  FD_ERR_INVALID_ARGUMENT = 2,
  FD_ERR_DIMENSION_MISMATCH = 3,
  FD_ERR_DEGREE_MISMATCH = 4,
  FD_ERR_UNSUPPORTED_DIMENSION = 5,
  FD_ERR_DOMAIN = 6,
  FD_ERR_PROXIMITY = 7,
  FD_ERR_SINGULARITY = 8,
  FD_ERR_EVALUATION = 9,
  FD_ERR_PANIC = 10,
} fd_status;

/* Opaque handles. */
typedef struct fd_surface fd_surface;
typedef struct fd_field fd_field;
typedef struct fd_pair fd_pair;

/* Number of basis covectors of the given degree, C(n, degree). */
size_t fd_basis_size(size_t n, size_t degree);

/* Copy the latest error message into buf (truncated to cap - 1 bytes, NUL
 * terminated). Returns the full message length in bytes. */
size_t fd_last_error(char *buf, size_t cap);

/* Quadrature surfaces. `center` has length n (3 or 4). */
fd_status fd_surface_sphere(const double *center, size_t n, double radius,
                            size_t order, fd_surface **out);
fd_status fd_surface_ellipsoid(const double *center, const double *semi_axes,
                               size_t n, size_t order, fd_surface **out);
fd_status fd_surface_area(const fd_surface *surface, double *out);
fd_status fd_surface_node_count(const fd_surface *surface, size_t *out);
void fd_surface_free(fd_surface *surface);

/* Analytic fields. */
fd_status fd_field_harmonic_polynomial(size_t n, size_t degree, size_t index,
                                       fd_field **out);
fd_status fd_field_kernel_gradient(const double *center, size_t n,
                                   fd_field **out);
fd_status fd_field_ambient(const fd_field *field, size_t *out);
fd_status fd_field_degree(const fd_field *field, size_t *out);

/* Field evaluation; `coeffs` must hold `len` doubles where `len` is
 * fd_basis_size(n, degree +/- 0, 1) as appropriate for the operator. */
fd_status fd_field_eval(const fd_field *field, const double *x, size_t n,
                        double *coeffs, size_t len);
fd_status fd_field_d(const fd_field *field, const double *x, size_t n,
                     double *coeffs, size_t len);
fd_status fd_field_delta(const fd_field *field, const double *x, size_t n,
                         double *coeffs, size_t len);
fd_status fd_field_laplacian(const fd_field *field, const double *x, size_t n,
                             double *coeffs, size_t len);
void fd_field_free(fd_field *field);

/* Point-source holomorphic pair at x0 with weight covector xi
 * (xi_len = fd_basis_size(n, degree), 1 <= degree <= n-1). */
fd_status fd_pair_point(const double *x0, size_t n, size_t degree,
                        const double *xi, size_t xi_len, fd_pair **out);

/* Check the pair equations at `count` sample points (`samples` is count*n
 * doubles, row-major). Writes 1/0 into holds and the largest residual into
 * max_residual. */
fd_status fd_pair_check(const fd_pair *pair, const double *samples,
                        size_t count, size_t n, double tol, int32_t *holds,
                        double *max_residual);
void fd_pair_free(fd_pair *pair);

/* Boundary-integral reproduction at x (coeffs length = field basis size). */
fd_status fd_reproduce_interior(const fd_field *field,
                                const fd_surface *surface, const double *x,
                                size_t n, double *coeffs, size_t len);
fd_status fd_reproduce_exterior(const fd_field *field,
                                const fd_surface *surface, const double *x,
                                size_t n, double *coeffs, size_t len);

/* Duality pairings; term1/term2 may be NULL. */
fd_status fd_pairing_theorem1(const fd_field *field, const fd_pair *pair,
                              const fd_surface *surface, double *value,
                              double *term1, double *term2);
fd_status fd_pairing_theorem2(const fd_pair *pair, const fd_field *field,
                              const fd_surface *surface, double *value,
                              double *term1, double *term2);

/* Both point-measure reciprocity pairings: xi1 has degree r, xi2 degree
 * n - r; they satisfy p1 = (-1)^(n r + r) p2. */
fd_status fd_reciprocity_point(const double *x1, const double *xi1, size_t r,
                               const double *x2, const double *xi2, size_t n,
                               double *p1, double *p2);

#ifdef __cplusplus
}
#endif

#endif /* FORMDUAL_H */
