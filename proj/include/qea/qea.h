#ifndef QEA_H
#define QEA_H

/* C interface to the library. Every call returns a status; on failure
   qea_last_error_message() describes the problem for the calling thread.
   Strings handed out must be released with qea_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define QEA_API __attribute__((visibility("default")))
#else
#define QEA_API
#endif

typedef enum {
  QEA_OK = 0,
  QEA_ERR_SPEC = 1,         /* malformed or inconsistent input */
  QEA_ERR_RECIPE = 2,       /* unparsable module recipe */
  QEA_ERR_FIELD = 3,        /* no such field or root of unity */
  QEA_ERR_ARGUMENT = 4,     /* bad argument, zero point, mismatched algebras */
  QEA_ERR_BUDGET = 5,       /* resolution grew past the configured budget */
  QEA_ERR_IO = 6,
  QEA_ERR_INTERNAL = 7,     /* an internal consistency check failed */
  QEA_ERR_NULL = 8          /* a required pointer was NULL */
} qea_status;

typedef struct qea_config qea_config;
typedef struct qea_module qea_module;

QEA_API const char* qea_last_error_message(void);
QEA_API const char* qea_status_name(qea_status s);
/* 0 ok, 3 validation, 4 budget, 1 anything else. */
QEA_API int qea_status_exit_code(qea_status s);
QEA_API void qea_string_free(char* s);

/* Defaults: ell=2, m=2, p=5, r=1, n_max=10, d_max=4. */
QEA_API qea_status qea_config_new(qea_config** out);
QEA_API void qea_config_free(qea_config* c);
/* Flat TOML file; replaces every key it names. */
QEA_API qea_status qea_config_load(qea_config* c, const char* path);
/* JSON object of overrides, e.g. {"p": 7, "ell": 3}. */
QEA_API qea_status qea_config_set_json(qea_config* c, const char* json);
QEA_API qea_status qea_config_validate(const qea_config* c);
QEA_API qea_status qea_config_to_json(const qea_config* c, char** out);

/* Module spec text; the algebra is taken from the spec. */
QEA_API qea_status qea_module_from_json(const char* json, qea_module** out);
QEA_API qea_status qea_lambda_module_from_json(const char* json, qea_module** out);
/* Recipe over the algebra of the configuration. */
QEA_API qea_status qea_module_from_recipe(const qea_config* c, const char* recipe, qea_module** out);
QEA_API void qea_module_free(qea_module* m);
QEA_API size_t qea_module_dim(const qea_module* m);
QEA_API int qea_module_is_lambda(const qea_module* m);
/* Canonical spec text: sorted keys, two-space indent, trailing newline. */
QEA_API qea_status qea_module_to_json(const qea_module* m, char** out);

/* {"points", "orbit_reps", "field", "empty"} */
QEA_API qea_status qea_rank_variety(const qea_module* m, char** out);
/* {"points", "stabilized", "betti"}; uses the cache directory of c. */
QEA_API qea_status qea_support_variety(const qea_config* c, const qea_module* m, size_t n_max, unsigned d_max,
                                       char** out);

/* Report JSON; *passed is set to 1 when no check failed. */
QEA_API qea_status qea_check_suite(const qea_config* c, const char* suite, char** out, int* passed);
QEA_API qea_status qea_cache_clear(const qea_config* c, size_t* removed);

#ifdef __cplusplus
}
#endif

#endif
