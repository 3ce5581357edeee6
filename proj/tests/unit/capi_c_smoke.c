/* The public header must compile as C and the library must link from C. */
#include <stdio.h>

#include "swipt/swipt.h"

int main(void) {
  swipt_geometry g;
  swipt_params p;
  swipt_ensemble* e = NULL;
  swipt_report* r = NULL;
  swipt_report_summary s;
  swipt_scheme scheme;

  swipt_geometry_default(&g);
  swipt_params_default(&p);
  p.r0 = 6.5;
  if (swipt_parse_scheme("noan", &scheme) != SWIPT_OK) return 1;
  if (swipt_ensemble_generate(&g, 100, 3, &e) != SWIPT_OK) return 2;
  if (swipt_solve(e, &p, SWIPT_OUTAGE, scheme, 0.0, NULL, &r) != SWIPT_OK) {
    fprintf(stderr, "%s\n", swipt_last_error());
    return 3;
  }
  if (swipt_report_get_summary(r, &s) != SWIPT_OK || !s.feasible) return 4;
  printf("noan outage %.4f\n", s.objective);
  swipt_report_free(r);
  swipt_ensemble_free(e);
  return 0;
}
