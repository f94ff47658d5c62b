#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "common.hpp"
#include "qea/error.hpp"
#include "qea/io.hpp"

using namespace qea;
using testing_support::c1;
using testing_support::c2;

namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qea-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RingProvider ring_for(std::shared_ptr<const AlgebraCtx> ctx, std::size_t n_max = 6) {
  return [ctx, n_max] { return CohomologyRing::build(ctx, n_max); };
}

}  // namespace

TEST_CASE("config files") {
  Config c = parse_config_toml(
      "# comment\n[qea]\nell = 3\nm = 2\np = 7\nr = 1\nn_max = 12 # trailing\nd_max = 5\n"
      "iso_trials = 32\nrng_seed = 99\ncache_dir = \"/tmp/x#y\"\nbattery_size = 1_000\n");
  CHECK(c.ell == 3);
  CHECK(c.p == 7);
  CHECK(c.n_max == 12);
  CHECK(c.d_max == 5);
  CHECK(c.rng_seed == 99);
  CHECK(c.cache_dir == "/tmp/x#y");
  CHECK(c.battery_size == 1000);
  CHECK_NOTHROW(validate_config(c));

  CHECK(code_of([] { parse_config_toml("colour = 3\n"); }) == ErrorCode::SpecValidation);
  CHECK(code_of([] { parse_config_toml("p = -5\n"); }) == ErrorCode::SpecValidation);
  CHECK(code_of([] { parse_config_toml("p 5\n"); }) == ErrorCode::SpecValidation);
  Config bad;
  bad.n_max = 6;
  bad.d_max = 4;
  CHECK(code_of([&] { validate_config(bad); }) == ErrorCode::SpecValidation);
  bad = Config{};
  bad.p = 9;
  CHECK(code_of([&] { validate_config(bad); }) == ErrorCode::SpecValidation);
  bad = Config{};
  bad.ell = 3;  // 3 does not divide 5 - 1
  CHECK(code_of([&] { validate_config(bad); }) == ErrorCode::SpecValidation);

  Config o;
  apply_overrides(o, Json{{"p", 7}, {"ell", 3}});
  CHECK(o.p == 7);
  CHECK(o.ell == 3);
  CHECK(code_of([&] { apply_overrides(o, Json{{"p", "seven"}}); }) == ErrorCode::SpecValidation);
}

TEST_CASE("module specs round trip") {
  for (auto ctx : {c1(), c2(), testing_support::algebra(2, 2, 3, 2)}) {
    Rng rng(5);
    for (int t = 0; t < 4; ++t) {
      AModule m = random_module(ctx, rng);
      std::string text = canonical_dump(module_to_json(m));
      AModule back = module_from_json(Json::parse(text));
      CHECK(canonical_dump(module_to_json(back)) == text);
      CHECK(back.xs() == m.xs());
      CHECK(back.gs() == m.gs());
    }
    LambdaModule l = random_lambda_module(ctx, rng);
    std::string text = canonical_dump(lambda_module_to_json(l));
    CHECK(canonical_dump(lambda_module_to_json(lambda_module_from_json(Json::parse(text)))) == text);
  }
}

TEST_CASE("module specs are validated") {
  auto ctx = c1();
  Json good = module_to_json(regular_module(ctx));
  CHECK_NOTHROW(module_from_json(good));

  Json j = good;
  j.erase("g");
  CHECK(code_of([&] { module_from_json(j); }) == ErrorCode::SpecValidation);
  j = good;
  j["dim"] = 15;
  CHECK(code_of([&] { module_from_json(j); }) == ErrorCode::SpecValidation);
  j = good;
  j["X"][0][0][0] = Json::array({7});
  CHECK(code_of([&] { module_from_json(j); }) == ErrorCode::SpecValidation);
  j = good;
  j["p"] = 6;
  CHECK(code_of([&] { module_from_json(j); }) == ErrorCode::SpecValidation);
  CHECK(code_of([&] { module_from_json(good, c2()); }) == ErrorCode::SpecValidation);

  // X_1 replaced by the identity breaks nilpotency; the message names it
  j = good;
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) j["X"][0][r][c] = Json::array({r == c ? 1 : 0});
  try {
    module_from_json(j);
    FAIL("accepted a bad module");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecValidation);
    CHECK(std::string(e.what()).find("X_1") != std::string::npos);
  }
  CHECK(code_of([&] { lambda_module_from_json(good); }) == ErrorCode::SpecValidation);
}

TEST_CASE("recipes") {
  auto ctx = c1();
  auto ring = ring_for(ctx);
  CHECK(build_recipe("v:[1,1]", ctx, ring).dim() == 8);
  CHECK(build_recipe("vprime:[1,1]", ctx, ring).dim() == 8);
  CHECK(is_projective(build_recipe("tensor:trivial,regular", ctx, ring)));
  // L_y1 sits in P_1 with dimension dim Omega^2(k) - 1
  CHECK(build_recipe("lzeta:y1", ctx, ring).dim() == omega_power(trivial_module(ctx), 2).dim() - 1);
  CHECK(build_recipe("omega^-2:trivial", ctx, ring).dim() == omega_inverse(omega_inverse(trivial_module(ctx))).dim());
  CHECK(build_recipe("simple:[1,0]", ctx, ring).g(0)(0, 0) == ctx->field_ctx().q);
  CHECK(build_recipe("simple:1", ctx, ring).g(0)(0, 0) == ctx->field_ctx().q);
  CHECK(build_recipe("dual:simple:[1,1]", ctx, ring).xs() == simple_module(ctx, 3).xs());
  CHECK(build_recipe("random:3", ctx, ring).xs() == build_recipe("random:3", ctx, ring).xs());
  CHECK(build_recipe("tensor:v:[1,2],omega^1:trivial", ctx, ring).dim() == 8 * 3);
  CHECK(is_projective(build_recipe("induce:free", ctx, ring)));
  CHECK(build_recipe("induce:trivial", ctx, ring).dim() == 4);
  CHECK(build_recipe(" tensor: trivial , trivial ", ctx, ring).dim() == 1);

  for (const char* bad : {"", "trivia", "v:[1]", "v:[0,0]", "v:[1,1", "tensor:trivial", "omega^x:trivial",
                          "lzeta:", "lzeta:y3", "trivial,trivial", "random:", "induce:random:"})
    CHECK_MESSAGE(code_of([&] { build_recipe(bad, ctx, ring); }) == ErrorCode::RecipeParse, bad);
  CHECK(code_of([&] { build_recipe("lzeta:y1^4", ctx, ring); }) == ErrorCode::RecipeParse);
  CHECK(code_of([&] { build_recipe("induce:/no/such/file.json", ctx, ring); }) == ErrorCode::Io);
}

TEST_CASE("resolutions serialize") {
  auto ctx = c2();
  Rng rng(8);
  for (int t = 0; t < 3; ++t) {
    AModule m = random_module(ctx, rng);
    Resolution res = minimal_resolution(m, 4);
    Json j = resolution_to_json(res);
    Resolution back = resolution_from_json(Json::parse(j.dump()), ctx);
    for (std::size_t n = 0; n <= 4; ++n) CHECK(back.dense[n] == res.dense[n]);
  }
  Resolution res = minimal_resolution(trivial_module(ctx), 4);
  Json j = resolution_to_json(res);
  j["images"][3][0] = Json::array();
  CHECK_THROWS_AS(resolution_from_json(j, ctx), Error);
  j = resolution_to_json(res);
  j["tops"][2][0] = 99;
  CHECK(code_of([&] { resolution_from_json(j, ctx); }) == ErrorCode::SpecValidation);
}

TEST_CASE("resolution cache") {
  TempDir dir;
  auto ctx = c1();
  auto cold = cohomology_ring(ctx, 6, dir.path.string());
  std::size_t files = 0;
  for (auto& e : fs::directory_iterator(dir.path)) {
    ++files;
    CHECK(e.path().filename().string().rfind("res-2-2-5-1-", 0) == 0);
  }
  CHECK(files == 1);
  auto warm = cohomology_ring(ctx, 6, dir.path.string());
  auto fresh = CohomologyRing::build(ctx, 6);
  for (std::size_t n = 0; n <= 7; ++n) CHECK(warm->resolution().dense[n] == fresh->resolution().dense[n]);
  for (std::uint32_t i = 0; i < 2; ++i)
    for (std::size_t n = 0; n < warm->lift_count(); ++n)
      CHECK(warm->y_lift(i, n).images() == fresh->y_lift(i, n).images());
  CHECK(cold->resolution().dense[3] == warm->resolution().dense[3]);

  // a different length is a different entry
  cohomology_ring(ctx, 8, dir.path.string());
  CHECK(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator()) == 2);

  // damaged entries are rebuilt
  for (auto& e : fs::directory_iterator(dir.path)) std::ofstream(e.path()) << "{\"tops\": 1}";
  auto again = cohomology_ring(ctx, 6, dir.path.string());
  CHECK(again->resolution().dense[4] == fresh->resolution().dense[4]);

  CHECK(clear_cache(dir.path.string()) == 2);
  CHECK(fs::is_empty(dir.path));
  CHECK(clear_cache((dir.path / "missing").string()) == 0);
  CHECK(cache_key(trivial_module(ctx), 7) != cache_key(trivial_module(c2()), 7));
  CHECK(cache_key(trivial_module(ctx), 7) != cache_key(trivial_module(ctx), 9));
}
