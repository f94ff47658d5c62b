#pragma once

// Configuration, module spec files, recipes and the on-disk resolution cache.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include <json.hpp>

#include "qea/cohom.hpp"
#include "qea/lambda.hpp"

namespace qea {

using Json = nlohmann::json;

struct Config {
  std::uint32_t ell = 2;
  std::uint32_t m = 2;
  std::uint32_t p = 5;
  std::uint32_t r = 1;
  std::size_t n_max = 10;
  std::uint32_t d_max = 4;
  std::size_t iso_trials = 64;
  std::uint64_t rng_seed = 1;
  std::string cache_dir;  // empty: no cache
  std::size_t battery_size = 50;
  std::size_t budget = 1u << 20;
};

// Flat `key = value` lines; `#` comments and a single optional [section]
// header are accepted. Unknown keys are rejected.
Config parse_config_toml(const std::string& text);
Config load_config_file(const std::string& path);
// Keys as in the TOML file.
void apply_overrides(Config& c, const Json& overrides);
// SpecValidation unless the field exists and n_max >= 2 d_max.
void validate_config(const Config& c);
Json config_to_json(const Config& c);
// QEA_CACHE_DIR wins over the configured directory.
std::string effective_cache_dir(const Config& c);
std::shared_ptr<const AlgebraCtx> make_algebra(const Config& c);
std::shared_ptr<const AlgebraCtx> make_algebra(std::uint32_t ell, std::uint32_t m, std::uint32_t p, std::uint32_t r);

Json field_elem_to_json(const Field& f, FieldElem e);
FieldElem field_elem_from_json(const Field& f, const Json& j);
Json points_to_json(const Field& f, const std::vector<Point>& pts);

// {"l", "m", "p", "r", "dim", "X", "g"}; Lambda modules omit "g".
Json module_to_json(const AModule& m);
Json lambda_module_to_json(const LambdaModule& m);
// Builds the algebra from the spec unless one is given, in which case the
// parameters must agree. Throws SpecValidation naming the first problem.
AModule module_from_json(const Json& j, std::shared_ptr<const AlgebraCtx> ctx = nullptr);
LambdaModule lambda_module_from_json(const Json& j, std::shared_ptr<const AlgebraCtx> ctx = nullptr);
// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

using RingProvider = std::function<std::shared_ptr<const CohomologyRing>()>;

// trivial | simple:<chi> | regular | v:<pt> | vprime:<pt> | omega^<i>:<r> |
// tensor:<r>,<r> | dual:<r> | lzeta:<poly> | random:<seed> | induce:<lambda>
// with <lambda> one of trivial, free, random:<seed> or a spec file path.
// Points and characters are written [a,b,...].
AModule build_recipe(const std::string& recipe, std::shared_ptr<const AlgebraCtx> ctx, const RingProvider& ring);

// FNV-1a of the canonical spec of the resolved module.
std::string cache_key(const AModule& target, std::size_t length);
// Resolution of k of length n_max + 1, read from or written to `cache_dir`
// when it is non-empty.
std::shared_ptr<const CohomologyRing> cohomology_ring(std::shared_ptr<const AlgebraCtx> ctx, std::size_t n_max,
                                                      const std::string& cache_dir, std::size_t budget = 1u << 20);
Json resolution_to_json(const Resolution& res);
Resolution resolution_from_json(const Json& j, std::shared_ptr<const AlgebraCtx> ctx);
// Number of cache files removed.
std::size_t clear_cache(const std::string& cache_dir);

}  // namespace qea
