#include <math.h>
#include <stdio.h>
#include <string.h>

#include "elastocloak.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

int main(void) {
  EXPECT(strcmp(ec_version(), "0.1.0") == 0);

  ec_config* cfg = NULL;
  EXPECT(ec_config_from_json("{\"omega\": 1.0, \"n_max\": 6, \"grid\": [1.5, 2.0]}", &cfg) == EC_OK);
  EXPECT(cfg != NULL);
  EXPECT(strlen(ec_last_error()) == 0);

  char hash[17];
  EXPECT(ec_config_hash(cfg, hash) == EC_OK);
  EXPECT(strlen(hash) == 16);

  ec_report* rep = NULL;
  int passed = 0;
  EXPECT(ec_run("design", cfg, &rep) == EC_OK);
  EXPECT(ec_report_passed(rep, &passed) == EC_OK && passed == 1);
  EXPECT(strncmp(ec_report_csv(rep), "# elastocloak 0.1.0 command=design config=", 42) == 0);
  EXPECT(strstr(ec_report_json(rep), hash) != NULL);
  ec_report_free(rep);

  EXPECT(ec_run("nonsense", cfg, &rep) == EC_ERR_DOMAIN);
  EXPECT(rep == NULL);
  EXPECT(strstr(ec_last_error(), "nonsense") != NULL);

  /* Static kernel at unit separation for lambda = mu = 1. */
  const double x[2] = {1.0, 0.0}, y[2] = {0.0, 0.0};
  const ec_medium unit = {1.0, 1.0, 1.0, 0.0};
  double g[8];
  EXPECT(ec_green_2d(x, y, 0.0, &unit, g) == EC_OK);
  EXPECT(fabs(g[0] - 2.0 / 3.0 / (4.0 * M_PI)) < 1e-15);
  EXPECT(fabs(g[6]) < 1e-15);
  EXPECT(ec_green_2d(x, x, 1.0, &unit, g) != EC_OK);

  ec_ntd *a = NULL, *b = NULL;
  double dist = -1.0;
  EXPECT(ec_ntd_near_cloak(cfg, 0.1, &a) == EC_OK);
  EXPECT(ec_ntd_uniform(cfg, &b) == EC_OK);
  EXPECT(ec_ntd_distance(a, b, &dist) == EC_OK);
  EXPECT(dist > 0.0 && dist < 1.0);
  double block[8];
  EXPECT(ec_ntd_block(b, -2, block) == EC_OK);
  ec_ntd_free(a);
  ec_ntd_free(b);
  EXPECT(ec_ntd_near_cloak(cfg, 0.7, &a) == EC_ERR_DOMAIN);
  EXPECT(a == NULL);

  double rho[2], det = 1.0;
  EXPECT(ec_find_resonance(1.0, 1.0, 0.5, 1.0, 1.0, rho, &det) == EC_OK);
  EXPECT(rho[0] > 0.0 && rho[1] > 0.0 && det < 1e-8);

  EXPECT(ec_config_set_n_max(cfg, 300) == EC_ERR_DOMAIN);
  EXPECT(ec_config_set_seed(NULL, 1) == EC_ERR_NULL_ARGUMENT);
  ec_config_free(cfg);

  ec_config* bad = NULL;
  EXPECT(ec_config_from_json("{not json", &bad) == EC_ERR_PARSE);
  EXPECT(ec_config_from_file("/nonexistent.json", &bad) == EC_ERR_IO);
  EXPECT(bad == NULL);

  if (failures) fprintf(stderr, "%d C API checks failed\n", failures);
  return failures ? 1 : 0;
}
