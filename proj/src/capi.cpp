#include "qea/qea.h"

#include <cstring>
#include <variant>

#include "qea/checks.hpp"
#include "qea/error.hpp"
#include "qea/io.hpp"

struct qea_config {
  qea::Config cfg;
};

struct qea_module {
  std::variant<qea::AModule, qea::LambdaModule> m;
};

namespace {

thread_local std::string last_error;

qea_status status_of(qea::ErrorCode c) {
  using qea::ErrorCode;
  switch (c) {
    case ErrorCode::SpecValidation:
    case ErrorCode::RelationViolation: return QEA_ERR_SPEC;
    case ErrorCode::RecipeParse: return QEA_ERR_RECIPE;
    case ErrorCode::NonPrimeModulus:
    case ErrorCode::NoRootOfUnity:
    case ErrorCode::CharDividesEll: return QEA_ERR_FIELD;
    case ErrorCode::ContextMismatch:
    case ErrorCode::ZeroPoint:
    case ErrorCode::OutOfRange:
    case ErrorCode::ZeroCocycle:
    case ErrorCode::InvalidArgument: return QEA_ERR_ARGUMENT;
    case ErrorCode::ResourceBudgetExceeded: return QEA_ERR_BUDGET;
    case ErrorCode::Io: return QEA_ERR_IO;
    case ErrorCode::NormalizationFailure:
    case ErrorCode::InvariantViolation: return QEA_ERR_INTERNAL;
  }
  return QEA_ERR_INTERNAL;
}

template <class Fn>
qea_status guarded(Fn fn) {
  try {
    last_error.clear();
    fn();
    return QEA_OK;
  } catch (const qea::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QEA_ERR_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QEA_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool null_arg(const void* p, const char* what) {
  if (p) return false;
  last_error = std::string(what) + " is NULL";
  return true;
}

qea::Json parse(const char* text) {
  try {
    return qea::Json::parse(text);
  } catch (const qea::Json::parse_error& e) {
    throw qea::Error(qea::ErrorCode::SpecValidation, e.what());
  }
}

}  // namespace

extern "C" {

const char* qea_last_error_message(void) { return last_error.c_str(); }

const char* qea_status_name(qea_status s) {
  switch (s) {
    case QEA_OK: return "ok";
    case QEA_ERR_SPEC: return "spec validation";
    case QEA_ERR_RECIPE: return "recipe parse";
    case QEA_ERR_FIELD: return "field";
    case QEA_ERR_ARGUMENT: return "invalid argument";
    case QEA_ERR_BUDGET: return "resource budget exceeded";
    case QEA_ERR_IO: return "i/o";
    case QEA_ERR_INTERNAL: return "internal";
    case QEA_ERR_NULL: return "null pointer";
  }
  return "unknown";
}

int qea_status_exit_code(qea_status s) {
  switch (s) {
    case QEA_OK: return 0;
    case QEA_ERR_SPEC:
    case QEA_ERR_RECIPE:
    case QEA_ERR_FIELD:
    case QEA_ERR_ARGUMENT:
    case QEA_ERR_IO: return 3;
    case QEA_ERR_BUDGET: return 4;
    default: return 1;
  }
}

void qea_string_free(char* s) { std::free(s); }

qea_status qea_config_new(qea_config** out) {
  if (null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] { *out = new qea_config{}; });
}

void qea_config_free(qea_config* c) { delete c; }

qea_status qea_config_load(qea_config* c, const char* path) {
  if (null_arg(c, "config") || null_arg(path, "path")) return QEA_ERR_NULL;
  return guarded([&] {
    qea::Config loaded = qea::load_config_file(path);
    c->cfg = loaded;
  });
}

qea_status qea_config_set_json(qea_config* c, const char* json) {
  if (null_arg(c, "config") || null_arg(json, "json")) return QEA_ERR_NULL;
  return guarded([&] {
    qea::Config next = c->cfg;
    qea::apply_overrides(next, parse(json));
    c->cfg = next;
  });
}

qea_status qea_config_validate(const qea_config* c) {
  if (null_arg(c, "config")) return QEA_ERR_NULL;
  return guarded([&] { qea::validate_config(c->cfg); });
}

qea_status qea_config_to_json(const qea_config* c, char** out) {
  if (null_arg(c, "config") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] { *out = dup(qea::canonical_dump(qea::config_to_json(c->cfg))); });
}

qea_status qea_module_from_json(const char* json, qea_module** out) {
  if (null_arg(json, "json") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] { *out = new qea_module{qea::module_from_json(parse(json))}; });
}

qea_status qea_lambda_module_from_json(const char* json, qea_module** out) {
  if (null_arg(json, "json") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] { *out = new qea_module{qea::lambda_module_from_json(parse(json))}; });
}

qea_status qea_module_from_recipe(const qea_config* c, const char* recipe, qea_module** out) {
  if (null_arg(c, "config") || null_arg(recipe, "recipe") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] {
    qea::Session s(c->cfg);
    *out = new qea_module{qea::build_recipe(recipe, s.ctx(), s.ring_provider())};
  });
}

void qea_module_free(qea_module* m) { delete m; }

size_t qea_module_dim(const qea_module* m) {
  if (!m) return 0;
  return std::visit([](const auto& x) { return x.dim(); }, m->m);
}

int qea_module_is_lambda(const qea_module* m) { return m && std::holds_alternative<qea::LambdaModule>(m->m); }

qea_status qea_module_to_json(const qea_module* m, char** out) {
  if (null_arg(m, "module") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] {
    qea::Json j = std::holds_alternative<qea::AModule>(m->m) ? qea::module_to_json(std::get<qea::AModule>(m->m))
                                                               : qea::lambda_module_to_json(std::get<qea::LambdaModule>(m->m));
    *out = dup(qea::canonical_dump(j));
  });
}

qea_status qea_rank_variety(const qea_module* m, char** out) {
  if (null_arg(m, "module") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] {
    qea::OrbitVariety v = std::holds_alternative<qea::AModule>(m->m)
                              ? qea::rank_variety(std::get<qea::AModule>(m->m))
                              : qea::lambda_rank_variety(std::get<qea::LambdaModule>(m->m));
    const qea::Field& f = std::visit([](const auto& x) -> const qea::Field& { return x.ctx().field(); }, m->m);
    qea::Json j{{"points", qea::points_to_json(f, v.points)},
                {"orbit_reps", qea::points_to_json(f, v.orbit_reps)},
                {"field", {{"p", v.p}, {"r", v.r}}},
                {"empty", v.empty()}};
    *out = dup(qea::canonical_dump(j));
  });
}

qea_status qea_support_variety(const qea_config* c, const qea_module* m, size_t n_max, unsigned d_max, char** out) {
  if (null_arg(c, "config") || null_arg(m, "module") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] {
    if (n_max < 2 || d_max < 1 || n_max < 2 * static_cast<size_t>(d_max))
      throw qea::Error(qea::ErrorCode::InvalidArgument, "need d_max >= 1 and n_max >= 2 d_max");
    auto ctx = std::visit([](const auto& x) { return x.ctx_ptr(); }, m->m);
    auto ring = qea::cohomology_ring(ctx, n_max, qea::effective_cache_dir(c->cfg), c->cfg.budget);
    qea::SupportVariety v = std::holds_alternative<qea::AModule>(m->m)
                                ? qea::support_variety(*ring, std::get<qea::AModule>(m->m), n_max, d_max)
                                : qea::lambda_support_variety(*ring, std::get<qea::LambdaModule>(m->m), n_max, d_max);
    qea::Json j{{"points", qea::points_to_json(ctx->field(), v.points)},
                {"stabilized", v.stabilized},
                {"betti", v.betti}};
    *out = dup(qea::canonical_dump(j));
  });
}

qea_status qea_check_suite(const qea_config* c, const char* suite, char** out, int* passed) {
  if (null_arg(c, "config") || null_arg(suite, "suite") || null_arg(out, "out")) return QEA_ERR_NULL;
  return guarded([&] {
    qea::Json report = qea::run_suite(suite, c->cfg);
    if (passed) *passed = report["passed"].get<bool>() ? 1 : 0;
    *out = dup(qea::canonical_dump(report));
  });
}

qea_status qea_cache_clear(const qea_config* c, size_t* removed) {
  if (null_arg(c, "config")) return QEA_ERR_NULL;
  return guarded([&] {
    size_t n = qea::clear_cache(qea::effective_cache_dir(c->cfg));
    if (removed) *removed = n;
  });
}

}  // extern "C"
