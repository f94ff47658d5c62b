/* The C interface, compiled as C. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qea/qea.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static int contains(const char* haystack, const char* needle) { return strstr(haystack, needle) != NULL; }

int main(void) {
  qea_config* cfg = NULL;
  qea_module* m = NULL;
  qea_module* back = NULL;
  char* text = NULL;
  char* again = NULL;
  char* out = NULL;
  int passed = -1;
  size_t removed = 7;

  EXPECT(qea_config_new(&cfg) == QEA_OK);
  EXPECT(qea_config_validate(cfg) == QEA_OK);
  EXPECT(qea_config_set_json(cfg, "{\"n_max\": 6, \"d_max\": 3}") == QEA_OK);

  /* V([1,1]) for ell = 2, m = 2 has dimension 8 */
  EXPECT(qea_module_from_recipe(cfg, "v:[1,1]", &m) == QEA_OK);
  EXPECT(qea_module_dim(m) == 8);
  EXPECT(!qea_module_is_lambda(m));
  EXPECT(qea_module_to_json(m, &text) == QEA_OK);
  EXPECT(qea_module_from_json(text, &back) == QEA_OK);
  EXPECT(qea_module_to_json(back, &again) == QEA_OK);
  EXPECT(strcmp(text, again) == 0);

  EXPECT(qea_rank_variety(m, &out) == QEA_OK);
  EXPECT(contains(out, "\"empty\": false"));
  qea_string_free(out);
  EXPECT(qea_support_variety(cfg, m, 6, 3, &out) == QEA_OK);
  EXPECT(contains(out, "\"stabilized\": true"));
  qea_string_free(out);
  EXPECT(qea_support_variety(cfg, m, 4, 3, &out) == QEA_ERR_ARGUMENT);

  /* errors carry a status, an exit code and a message */
  EXPECT(qea_module_from_json("{\"l\": 2}", &m) == QEA_ERR_SPEC);
  EXPECT(qea_status_exit_code(QEA_ERR_SPEC) == 3);
  EXPECT(contains(qea_last_error_message(), "missing"));
  EXPECT(qea_module_from_json("not json", &m) == QEA_ERR_SPEC);
  EXPECT(qea_module_from_recipe(cfg, "v:[0,0]", &m) == QEA_ERR_RECIPE);
  EXPECT(qea_status_exit_code(QEA_ERR_RECIPE) == 3);
  EXPECT(qea_config_set_json(cfg, "{\"colour\": 1}") == QEA_ERR_SPEC);
  EXPECT(qea_config_set_json(cfg, "{\"p\": 9}") == QEA_OK);
  EXPECT(qea_config_validate(cfg) == QEA_ERR_SPEC);
  EXPECT(qea_config_set_json(cfg, "{\"p\": 5}") == QEA_OK);
  EXPECT(qea_module_dim(NULL) == 0);
  EXPECT(qea_rank_variety(NULL, &out) == QEA_ERR_NULL);
  EXPECT(qea_config_load(cfg, "/no/such/config.toml") == QEA_ERR_IO);
  EXPECT(qea_check_suite(cfg, "nonsense", &out, &passed) == QEA_ERR_ARGUMENT);

  EXPECT(qea_config_set_json(cfg, "{\"budget\": 10}") == QEA_OK);
  EXPECT(qea_support_variety(cfg, m, 6, 3, &out) == QEA_ERR_BUDGET);
  EXPECT(qea_status_exit_code(QEA_ERR_BUDGET) == 4);
  EXPECT(qea_config_set_json(cfg, "{\"budget\": 1000000}") == QEA_OK);

  EXPECT(qea_check_suite(cfg, "dade", &out, &passed) == QEA_OK);
  EXPECT(passed == 1);
  EXPECT(contains(out, "mt19937_64"));
  qea_string_free(out);

  /* Lambda modules */
  qea_module_free(back);
  back = NULL;
  EXPECT(qea_lambda_module_from_json(text, &back) == QEA_ERR_SPEC);
  EXPECT(qea_config_set_json(cfg, "{\"cache_dir\": \"\"}") == QEA_OK);
  EXPECT(qea_cache_clear(cfg, &removed) == QEA_OK);
  EXPECT(removed == 0);

  qea_string_free(text);
  qea_string_free(again);
  qea_module_free(m);
  qea_module_free(back);
  qea_config_free(cfg);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}
