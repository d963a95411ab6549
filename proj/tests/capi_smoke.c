/* The public header must compile as C. */
#include <stdio.h>

#include "hypstrip/hypstrip.h"

int main(void) {
  hs_surface* s = NULL;
  double l = 0.0;
  if (hs_torus_create(4.0, 4.0, 4.0, &s) != HS_OK) return 1;
  if (hs_curve_length(s, "abAB", &l) != HS_OK) return 1;
  printf("boundary %.12f\n", l);
  hs_surface_free(s);
  return l > 5.77 && l < 5.78 ? 0 : 1;
}
