/* Links against libformdual_ffi and exercises the header end to end:
 * builds a sphere and a harmonic field, reproduces the field from its
 * boundary trace, pairs it against a point pair, and checks error paths.
 * Exits nonzero on the first failure.
 */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "formdual.h"

#define REQUIRE(cond)                                                   \
  do {                                                                  \
    if (!(cond)) {                                                      \
      fprintf(stderr, "FAILED at %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                         \
    }                                                                   \
  } while (0)

int main(void) {
  const double center[3] = {0.0, 0.0, 0.0};
  fd_surface *surface = NULL;
  REQUIRE(fd_surface_sphere(center, 3, 1.0, 32, &surface) == FD_OK);

  double area = 0.0;
  REQUIRE(fd_surface_area(surface, &area) == FD_OK);
  REQUIRE(fabs(area - 4.0 * M_PI) < 1e-9);

  fd_field *field = NULL;
  REQUIRE(fd_field_harmonic_polynomial(3, 1, 0, &field) == FD_OK);
  size_t degree = 0;
  REQUIRE(fd_field_degree(field, &degree) == FD_OK);
  REQUIRE(degree == 1);

  const size_t len = fd_basis_size(3, 1);
  REQUIRE(len == 3);
  const double x[3] = {0.3, 0.1, -0.2};
  double direct[3] = {0};
  double reproduced[3] = {0};
  REQUIRE(fd_field_eval(field, x, 3, direct, len) == FD_OK);
  REQUIRE(fd_reproduce_interior(field, surface, x, 3, reproduced, len) == FD_OK);
  for (size_t i = 0; i < len; ++i) {
    REQUIRE(fabs(direct[i] - reproduced[i]) <= 1e-7);
  }

  /* Pairing against a point pair at the pole recovers <u(x0), xi>. */
  const double pole[3] = {0.3, 0.2, 0.1};
  const double xi[3] = {1.0, 0.0, 0.0};
  fd_pair *pair = NULL;
  REQUIRE(fd_pair_point(pole, 3, 1, xi, 3, &pair) == FD_OK);
  double value = 0.0, t1 = 0.0, t2 = 0.0;
  REQUIRE(fd_pairing_theorem1(field, pair, surface, &value, &t1, &t2) == FD_OK);
  REQUIRE(fabs(value - (t1 + t2)) < 1e-15);
  double at_pole[3] = {0};
  REQUIRE(fd_field_eval(field, pole, 3, at_pole, len) == FD_OK);
  REQUIRE(fabs(value - at_pole[0]) <= 1e-5 * (1.0 + fabs(at_pole[0])));

  /* Error paths carry status codes and messages. */
  REQUIRE(fd_surface_sphere(NULL, 3, 1.0, 16, &surface) == FD_ERR_NULL_ARGUMENT);
  const double near[3] = {0.99, 0.0, 0.0};
  double sink[3] = {0};
  REQUIRE(fd_reproduce_interior(field, surface, near, 3, sink, len) ==
          FD_ERR_PROXIMITY);
  char msg[256];
  REQUIRE(fd_last_error(msg, sizeof msg) > 0);

  fd_pair_free(pair);
  fd_field_free(field);
  fd_surface_free(surface);
  printf("ok\n");
  return 0;
}
