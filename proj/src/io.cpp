#include "qea/io.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qea/error.hpp"

namespace qea {

namespace fs = std::filesystem;

// ---- config

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::uint64_t as_uint(const Json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw Error(ErrorCode::SpecValidation, "config key '" + key + "' needs a non-negative integer");
  return v.get<std::uint64_t>();
}

void set_key(Config& c, const std::string& key, const Json& v) {
  auto u32 = [&](std::uint32_t& dst) {
    auto x = as_uint(v, key);
    if (x > 0xffffffffu) throw Error(ErrorCode::SpecValidation, "config key '" + key + "' is too large");
    dst = static_cast<std::uint32_t>(x);
  };
  if (key == "ell" || key == "l")
    u32(c.ell);
  else if (key == "m")
    u32(c.m);
  else if (key == "p")
    u32(c.p);
  else if (key == "r")
    u32(c.r);
  else if (key == "n_max")
    c.n_max = as_uint(v, key);
  else if (key == "d_max")
    u32(c.d_max);
  else if (key == "iso_trials")
    c.iso_trials = as_uint(v, key);
  else if (key == "rng_seed")
    c.rng_seed = as_uint(v, key);
  else if (key == "battery_size")
    c.battery_size = as_uint(v, key);
  else if (key == "budget")
    c.budget = as_uint(v, key);
  else if (key == "cache_dir") {
    if (!v.is_string()) throw Error(ErrorCode::SpecValidation, "config key 'cache_dir' needs a string");
    c.cache_dir = v.get<std::string>();
  } else {
    throw Error(ErrorCode::SpecValidation, "unknown config key '" + key + "'");
  }
}

}  // namespace

Config parse_config_toml(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool seen_section = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
    // strip a comment that is not inside a string
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || seen_section) throw Error(ErrorCode::SpecValidation, "bad section header" + where());
      seen_section = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::SpecValidation, "expected key = value" + where());
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) throw Error(ErrorCode::SpecValidation, "expected key = value" + where());
    Json v;
    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') throw Error(ErrorCode::SpecValidation, "unterminated string" + where());
      v = val.substr(1, val.size() - 2);
    } else {
      std::string digits;
      for (char ch : val)
        if (ch != '_') digits += ch;
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::SpecValidation, "value of '" + key + "' is not a non-negative integer" + where());
      try {
        v = std::stoull(digits);
      } catch (const std::exception&) {
        throw Error(ErrorCode::SpecValidation, "value of '" + key + "' is out of range" + where());
      }
    }
    set_key(c, key, v);
  }
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_toml(ss.str());
}

void apply_overrides(Config& c, const Json& overrides) {
  if (overrides.is_null()) return;
  if (!overrides.is_object()) throw Error(ErrorCode::SpecValidation, "overrides must be a JSON object");
  for (auto& [k, v] : overrides.items()) set_key(c, k, v);
}

void validate_config(const Config& c) {
  if (c.n_max < 2 * static_cast<std::size_t>(c.d_max))
    throw Error(ErrorCode::SpecValidation, "n_max must be at least 2 d_max");
  if (c.d_max < 1 || c.n_max < 2) throw Error(ErrorCode::SpecValidation, "need d_max >= 1 and n_max >= 2");
  if (c.m < 1 || c.m > 4) throw Error(ErrorCode::SpecValidation, "m must be between 1 and 4");
  try {
    make_field(c.p, c.r, c.ell);
  } catch (const Error& e) {
    throw Error(ErrorCode::SpecValidation, e.what());
  }
}

Json config_to_json(const Config& c) {
  return Json{{"ell", c.ell},
              {"m", c.m},
              {"p", c.p},
              {"r", c.r},
              {"n_max", c.n_max},
              {"d_max", c.d_max},
              {"iso_trials", c.iso_trials},
              {"rng_seed", c.rng_seed},
              {"battery_size", c.battery_size},
              {"budget", c.budget}};
}

std::string effective_cache_dir(const Config& c) {
  if (const char* env = std::getenv("QEA_CACHE_DIR"); env && *env) return env;
  return c.cache_dir;
}

std::shared_ptr<const AlgebraCtx> make_algebra(std::uint32_t ell, std::uint32_t m, std::uint32_t p, std::uint32_t r) {
  return AlgebraCtx::create(make_field(p, r, ell), m);
}

std::shared_ptr<const AlgebraCtx> make_algebra(const Config& c) {
  validate_config(c);
  return make_algebra(c.ell, c.m, c.p, c.r);
}

// ---- spec files

Json field_elem_to_json(const Field& f, FieldElem e) { return Json(f.coeffs(e)); }

FieldElem field_elem_from_json(const Field& f, const Json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  if (!j.is_array() || j.size() != f.degree())
    throw Error(ErrorCode::SpecValidation, "field element must be a list of " + std::to_string(f.degree()) + " coefficients");
  std::vector<std::uint32_t> c;
  for (auto& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() >= f.characteristic())
      throw Error(ErrorCode::SpecValidation, "coefficient out of range 0.." + std::to_string(f.characteristic() - 1));
    c.push_back(x.get<std::uint32_t>());
  }
  return f.from_coeffs(c);
}

Json points_to_json(const Field& f, const std::vector<Point>& pts) {
  Json out = Json::array();
  for (auto& pt : pts) {
    Json row = Json::array();
    for (auto e : pt) row.push_back(field_elem_to_json(f, e));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

Json matrix_json(const Field& f, const Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(field_elem_to_json(f, a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const Field& f, const Json& j, std::size_t dim, const std::string& what) {
  if (!j.is_array() || j.size() != dim)
    throw Error(ErrorCode::SpecValidation, what + " must have " + std::to_string(dim) + " rows");
  Matrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim)
      throw Error(ErrorCode::SpecValidation, what + " row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    for (std::size_t k = 0; k < dim; ++k) a(i, k) = field_elem_from_json(f, j[i][k]);
  }
  return a;
}

Json header(const AlgebraCtx& ctx, std::size_t dim) {
  const Field& f = ctx.field();
  return Json{{"l", ctx.ell()}, {"m", ctx.m()}, {"p", f.characteristic()}, {"r", f.degree()}, {"dim", dim}};
}

std::shared_ptr<const AlgebraCtx> spec_algebra(const Json& j, std::shared_ptr<const AlgebraCtx> ctx) {
  if (!j.is_object()) throw Error(ErrorCode::SpecValidation, "module spec must be a JSON object");
  for (const char* k : {"l", "m", "p", "r", "dim", "X"})
    if (!j.contains(k)) throw Error(ErrorCode::SpecValidation, std::string("module spec is missing '") + k + "'");
  std::uint32_t v[4];
  const char* keys[4] = {"l", "m", "p", "r"};
  for (int i = 0; i < 4; ++i) {
    if (!j[keys[i]].is_number_unsigned()) throw Error(ErrorCode::SpecValidation, std::string("'") + keys[i] + "' must be a positive integer");
    v[i] = j[keys[i]].get<std::uint32_t>();
  }
  if (!j["dim"].is_number_unsigned()) throw Error(ErrorCode::SpecValidation, "'dim' must be a non-negative integer");
  if (ctx) {
    if (ctx->ell() != v[0] || ctx->m() != v[1] || ctx->field().characteristic() != v[2] || ctx->field().degree() != v[3])
      throw Error(ErrorCode::SpecValidation, "module spec is for a different algebra");
    return ctx;
  }
  if (v[1] < 1 || v[1] > 4) throw Error(ErrorCode::SpecValidation, "m must be between 1 and 4");
  try {
    return make_algebra(v[0], v[1], v[2], v[3]);
  } catch (const Error& e) {
    throw Error(ErrorCode::SpecValidation, e.what());
  }
}

std::vector<Matrix> matrices(const Field& f, const Json& j, std::uint32_t m, std::size_t dim, const char* name) {
  if (!j.is_array() || j.size() != m)
    throw Error(ErrorCode::SpecValidation, std::string("'") + name + "' must list " + std::to_string(m) + " matrices");
  std::vector<Matrix> out;
  for (std::uint32_t i = 0; i < m; ++i) out.push_back(matrix_from(f, j[i], dim, std::string(name) + "_" + std::to_string(i + 1)));
  return out;
}

void relation_as_spec_error(const std::function<void()>& check) {
  try {
    check();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RelationViolation) throw Error(ErrorCode::SpecValidation, e.what());
    throw;
  }
}

}  // namespace

Json module_to_json(const AModule& m) {
  Json j = header(m.ctx(), m.dim());
  Json x = Json::array(), g = Json::array();
  for (std::uint32_t i = 0; i < m.ctx().m(); ++i) {
    x.push_back(matrix_json(m.field(), m.x(i)));
    g.push_back(matrix_json(m.field(), m.g(i)));
  }
  j["X"] = std::move(x);
  j["g"] = std::move(g);
  return j;
}

Json lambda_module_to_json(const LambdaModule& m) {
  Json j = header(m.ctx(), m.dim());
  Json x = Json::array();
  for (std::uint32_t i = 0; i < m.ctx().m(); ++i) x.push_back(matrix_json(m.ctx().field(), m.x(i)));
  j["X"] = std::move(x);
  return j;
}

AModule module_from_json(const Json& j, std::shared_ptr<const AlgebraCtx> ctx) {
  ctx = spec_algebra(j, std::move(ctx));
  if (!j.contains("g")) throw Error(ErrorCode::SpecValidation, "module spec is missing 'g'");
  const std::size_t dim = j["dim"].get<std::size_t>();
  const Field& f = ctx->field();
  AModule m(ctx, matrices(f, j["X"], ctx->m(), dim, "X"), matrices(f, j["g"], ctx->m(), dim, "g"));
  relation_as_spec_error([&] { m.validate(); });
  return m;
}

LambdaModule lambda_module_from_json(const Json& j, std::shared_ptr<const AlgebraCtx> ctx) {
  ctx = spec_algebra(j, std::move(ctx));
  if (j.contains("g")) throw Error(ErrorCode::SpecValidation, "a Lambda-module spec has no 'g' block");
  const std::size_t dim = j["dim"].get<std::size_t>();
  LambdaModule m(ctx, matrices(ctx->field(), j["X"], ctx->m(), dim, "X"));
  relation_as_spec_error([&] { m.validate(); });
  return m;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SpecValidation, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

// ---- recipes

namespace {

struct RecipeParser {
  const std::string& s;
  std::shared_ptr<const AlgebraCtx> ctx;
  const RingProvider& ring;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::RecipeParse, "recipe '" + s + "': " + what + " at position " + std::to_string(pos));
  }
  bool eat(const std::string& tok) {
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::int64_t integer() {
    bool neg = eat("-");
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected a number");
    std::int64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos++] - '0');
      if (v > (1ll << 40)) fail("number too large");
    }
    return neg ? -v : v;
  }
  std::vector<std::int64_t> list() {
    expect('[');
    std::vector<std::int64_t> out;
    if (eat("]")) return out;
    while (true) {
      out.push_back(integer());
      if (eat("]")) return out;
      expect(',');
    }
  }
  Vec point() {
    auto xs = list();
    if (xs.size() != ctx->m()) fail("point needs " + std::to_string(ctx->m()) + " coordinates");
    Vec v;
    for (auto x : xs) v.push_back(ctx->field().from_int(x));
    if (linalg::is_zero_vec(v)) fail("the zero vector is not a point");
    return v;
  }
  Packed character() {
    std::vector<std::int64_t> digits;
    if (pos < s.size() && s[pos] == '[')
      digits = list();
    else
      digits = {integer()};
    if (digits.size() == 1 && ctx->m() > 1) digits.resize(ctx->m(), 0);
    if (digits.size() != ctx->m()) fail("character needs " + std::to_string(ctx->m()) + " entries");
    std::vector<std::uint32_t> d;
    const std::int64_t l = ctx->ell();
    for (auto x : digits) d.push_back(static_cast<std::uint32_t>(((x % l) + l) % l));
    return ctx->pack(d);
  }
  // everything up to the next ',' or the end
  std::string word() {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ',') ++pos;
    if (pos == start) fail("expected an argument");
    return s.substr(start, pos - start);
  }
  LambdaModule lambda_arg() {
    if (eat("trivial")) return lambda_trivial(ctx);
    if (eat("free")) return lambda_regular(ctx);
    if (eat("random:")) {
      Rng rng(static_cast<std::uint64_t>(integer()));
      return random_lambda_module(ctx, rng);
    }
    return lambda_module_from_json(read_json_file(word()), ctx);
  }
  AModule recipe() {
    if (eat("trivial")) return trivial_module(ctx);
    if (eat("regular")) return regular_module(ctx);
    if (eat("simple:")) return simple_module(ctx, character());
    if (eat("vprime:")) return v_module(ctx, point(), true);
    if (eat("v:")) return v_module(ctx, point(), false);
    if (eat("omega^")) {
      auto i = integer();
      expect(':');
      if (i < -8 || i > 8) fail("omega power out of range");
      return omega_power(recipe(), static_cast<int>(i));
    }
    if (eat("omega:")) return omega(recipe());
    if (eat("tensor:")) {
      AModule a = recipe();
      expect(',');
      AModule b = recipe();
      return tensor(a, b);
    }
    if (eat("dual:")) return dual(recipe());
    if (eat("lzeta:")) {
      Poly p = parse_poly(ctx->field(), ctx->m(), word());
      if (p.degree() == 0) fail("lzeta needs a polynomial of positive degree");
      auto r = ring();
      if (2 * p.degree() > r->resolution().length()) fail("polynomial degree exceeds the configured n_max");
      return carlson_module(*r, r->cocycle(p));
    }
    if (eat("random:")) {
      Rng rng(static_cast<std::uint64_t>(integer()));
      return random_module(ctx, rng);
    }
    if (eat("induce:")) return induce_from_lambda(ctx, lambda_arg());
    fail("unknown recipe");
  }
};

}  // namespace

AModule build_recipe(const std::string& recipe, std::shared_ptr<const AlgebraCtx> ctx, const RingProvider& ring) {
  std::string compact;
  for (char c : recipe)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  RecipeParser p{compact, std::move(ctx), ring};
  AModule m = p.recipe();
  if (p.pos != compact.size()) p.fail("trailing input");
  return m;
}

// ---- resolution cache

std::string cache_key(const AModule& target, std::size_t length) {
  std::string text = module_to_json(target).dump() + "#" + std::to_string(length);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  const AlgebraCtx& ctx = target.ctx();
  return "res-" + std::to_string(ctx.ell()) + "-" + std::to_string(ctx.m()) + "-" +
         std::to_string(ctx.field().characteristic()) + "-" + std::to_string(ctx.field().degree()) + "-" + buf + "-" +
         std::to_string(length);
}

Json resolution_to_json(const Resolution& res) {
  Json tops = Json::array(), images = Json::array();
  for (std::size_t n = 0; n <= res.length(); ++n) {
    tops.push_back(res.term(n).tops());
    Json deg = Json::array();
    if (n == 0) {
      // generators of the target are recovered from the augmentation
      for (std::size_t j = 0; j < res.term(0).summands(); ++j) {
        Json v = Json::array();
        for (std::size_t r = 0; r < res.target.dim(); ++r) {
          FieldElem e = res.augmentation(r, res.term(0).index(j, 0));
          if (e.code) v.push_back({r, e.code});
        }
        deg.push_back(std::move(v));
      }
    } else {
      for (auto& sp : res.differentials[n].sparse()) {
        Json v = Json::array();
        for (auto& [idx, c] : sp) v.push_back({idx, c.code});
        deg.push_back(std::move(v));
      }
    }
    images.push_back(std::move(deg));
  }
  return Json{{"target", module_to_json(res.target)}, {"tops", tops}, {"images", images}};
}

Resolution resolution_from_json(const Json& j, std::shared_ptr<const AlgebraCtx> ctx) {
  try {
    AModule target = module_from_json(j.at("target"), ctx);
    auto tops = j.at("tops").get<std::vector<std::vector<Packed>>>();
    const auto& imgs = j.at("images");
    if (imgs.size() != tops.size()) throw Error(ErrorCode::SpecValidation, "cached resolution is inconsistent");
    std::vector<std::vector<Vec>> images;
    for (std::size_t n = 0; n < tops.size(); ++n) {
      const std::size_t len = n == 0 ? target.dim() : tops[n - 1].size() * ctx->lambda_dim();
      std::vector<Vec> deg;
      for (auto& v : imgs[n]) {
        Vec x(len);
        for (auto& e : v) {
          auto idx = e.at(0).get<std::size_t>();
          auto code = e.at(1).get<std::uint32_t>();
          if (idx >= len || code >= ctx->field().order())
            throw Error(ErrorCode::SpecValidation, "cached resolution entry out of range");
          x[idx] = FieldElem{code};
        }
        deg.push_back(std::move(x));
      }
      images.push_back(std::move(deg));
    }
    for (auto& t : tops)
      for (auto w : t)
        if (w >= ctx->lambda_dim()) throw Error(ErrorCode::SpecValidation, "cached resolution weight out of range");
    Resolution res = assemble_resolution(target, std::move(tops), std::move(images));
    verify_resolution(res);
    return res;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::SpecValidation, std::string("cached resolution: ") + e.what());
  }
}

std::shared_ptr<const CohomologyRing> cohomology_ring(std::shared_ptr<const AlgebraCtx> ctx, std::size_t n_max,
                                                      const std::string& cache_dir, std::size_t budget) {
  AModule k = trivial_module(ctx);
  if (cache_dir.empty()) return CohomologyRing::build(ctx, n_max, budget);
  fs::path file = fs::path(cache_dir) / (cache_key(k, n_max + 1) + ".json");
  std::error_code ec;
  if (fs::exists(file, ec)) {
    try {
      return CohomologyRing::from_resolution(resolution_from_json(read_json_file(file.string()), ctx));
    } catch (const Error&) {
      // a damaged entry is rebuilt below
    }
  }
  Resolution res = minimal_resolution(k, n_max + 1, budget);
  Json j = resolution_to_json(res);
  fs::create_directories(cache_dir, ec);
  if (!ec) {
    fs::path tmp = file;
    tmp += ".tmp";
    try {
      write_text_file(tmp.string(), j.dump() + "\n");
      fs::rename(tmp, file, ec);
    } catch (const Error&) {
      // the cache is an optimization; a read-only directory is not an error
    }
  }
  return CohomologyRing::from_resolution(std::move(res));
}

std::size_t clear_cache(const std::string& cache_dir) {
  std::size_t n = 0;
  std::error_code ec;
  if (cache_dir.empty() || !fs::is_directory(cache_dir, ec)) return 0;
  for (auto& e : fs::directory_iterator(cache_dir, ec)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("res-", 0) == 0 && (e.path().extension() == ".json" || e.path().extension() == ".tmp"))
      if (fs::remove(e.path(), ec)) ++n;
  }
  return n;
}

}  // namespace qea
