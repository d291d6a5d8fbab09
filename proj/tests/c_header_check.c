/* Compiles the public header as C and exercises a few calls. */
#include <math.h>
#include <stdio.h>

#include "mif/mif.h"

int main(void) {
  const double xyz[6] = {0.0, 0.0, 0.0, 1.2, 0.0, 0.0};
  mif_cluster* c = NULL;
  mif_cluster* out = NULL;
  mif_relax_summary s;
  mif_lattice* l = NULL;
  double e = 0.0;
  int failures = 0;

  if (mif_cluster_create(xyz, 2, NULL, &c) != MIF_OK) return 1;
  if (mif_relax(NULL, c, NULL, &out, &s) != MIF_OK) return 1;
  if (mif_energy(NULL, out, &e) != MIF_OK) return 1;
  if (fabs(e + 1.0) > 1e-9) {
    fprintf(stderr, "dimer energy %.12f\n", e);
    ++failures;
  }
  if (mif_lattice_generate(MIF_LATTICE_IF, 3, &l) != MIF_OK || mif_lattice_size(l) != 227) {
    fprintf(stderr, "IF lattice: %s\n", mif_last_error());
    ++failures;
  }
  mif_lattice_free(l);
  mif_cluster_free(out);
  mif_cluster_free(c);
  return failures == 0 ? 0 : 1;
}
