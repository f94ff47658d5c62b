// Command-line front end. Talks to the library only through qea.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qea/qea.h"

namespace {

struct Failure {
  qea_status status;
};

void ok(qea_status s) {
  if (s != QEA_OK) throw Failure{s};
}

struct ConfigHandle {
  qea_config* c = nullptr;
  ~ConfigHandle() { qea_config_free(c); }
};

struct ModuleHandle {
  qea_module* m = nullptr;
  ~ModuleHandle() { qea_module_free(m); }
};

struct Text {
  char* s = nullptr;
  ~Text() { qea_string_free(s); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Failure{QEA_ERR_IO};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string config_path;
  std::vector<std::string> sets;
  std::string cache_dir;
};

// key=value pairs become a JSON object; integers stay numbers.
std::string overrides_json(const std::vector<std::string>& sets) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
      throw Failure{QEA_ERR_SPEC};
    }
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (!val.empty() && val.find_first_not_of("0123456789") == std::string::npos)
      j[key] = std::stoull(val);
    else
      j[key] = val;
  }
  return j.dump();
}

void load_config(const Options& o, ConfigHandle& h) {
  ok(qea_config_new(&h.c));
  if (!o.config_path.empty()) ok(qea_config_load(h.c, o.config_path.c_str()));
  ok(qea_config_set_json(h.c, overrides_json(o.sets).c_str()));
  if (!o.cache_dir.empty()) {
    nlohmann::json j{{"cache_dir", o.cache_dir}};
    ok(qea_config_set_json(h.c, j.dump().c_str()));
  }
  ok(qea_config_validate(h.c));
}

void emit(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!(out << text)) {
    std::cerr << "error: cannot write " << out_path << "\n";
    throw Failure{QEA_ERR_IO};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank and support varieties for quantum elementary abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config_path, "TOML configuration file");
  app.add_option("--set", opt.sets, "override a configuration key (key=value)");
  app.add_option("--cache-dir", opt.cache_dir, "resolution cache directory (QEA_CACHE_DIR wins)");

  auto* variety = app.add_subcommand("variety", "rank or support variety of a module");
  std::string kind, module_path, lambda_path, out_path;
  std::size_t n_max = 0;
  unsigned d_max = 0;
  variety->add_option("kind", kind, "rank or support")->required()->check(CLI::IsMember({"rank", "support"}));
  auto* mod_opt = variety->add_option("--module", module_path, "module spec file");
  auto* lam_opt = variety->add_option("--lambda-module", lambda_path, "module spec over the X-subalgebra");
  mod_opt->excludes(lam_opt);
  variety->add_option("--nmax", n_max, "cohomological degree bound (default: config n_max)");
  variety->add_option("--dmax", d_max, "annihilator degree bound (default: config d_max)");
  variety->add_option("--out", out_path, "write the JSON here instead of stdout");

  auto* check = app.add_subcommand("check", "run a verification suite");
  std::string suite, report_path;
  check->add_option("suite", suite, "algebra, modules, dade, cohomology, avrunin-scott, carlson, lambda or all")
      ->required();
  check->add_option("--out", report_path, "write the report here instead of stdout");

  auto* gen = app.add_subcommand("genmodule", "write the spec of a module given by a recipe");
  std::string recipe, gen_out;
  gen->add_option("recipe", recipe, "trivial, simple:<chi>, regular, v:<pt>, vprime:<pt>, omega^<i>:<r>, "
                                    "tensor:<r>,<r>, dual:<r>, lzeta:<poly>, random:<seed>, induce:<lambda>")
      ->required();
  gen->add_option("--out", gen_out, "output path (default stdout)");

  auto* cache = app.add_subcommand("cache", "manage the resolution cache");
  auto* clear = cache->add_subcommand("clear", "remove cached resolutions");
  cache->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    ConfigHandle cfg;
    load_config(opt, cfg);
    if (variety->parsed()) {
      if (module_path.empty() == lambda_path.empty()) {
        std::cerr << "error: give exactly one of --module and --lambda-module\n";
        return qea_status_exit_code(QEA_ERR_ARGUMENT);
      }
      ModuleHandle m;
      std::string text = slurp(module_path.empty() ? lambda_path : module_path);
      ok(module_path.empty() ? qea_lambda_module_from_json(text.c_str(), &m.m)
                             : qea_module_from_json(text.c_str(), &m.m));
      Text out;
      if (kind == "rank") {
        ok(qea_rank_variety(m.m, &out.s));
      } else {
        Text cj;
        ok(qea_config_to_json(cfg.c, &cj.s));
        auto j = nlohmann::json::parse(cj.s);
        if (!n_max) n_max = j["n_max"].get<std::size_t>();
        if (!d_max) d_max = j["d_max"].get<unsigned>();
        ok(qea_support_variety(cfg.c, m.m, n_max, d_max, &out.s));
      }
      emit(out.s, out_path);
      return 0;
    }
    if (check->parsed()) {
      Text out;
      int passed = 0;
      ok(qea_check_suite(cfg.c, suite.c_str(), &out.s, &passed));
      emit(out.s, report_path);
      return passed ? 0 : 2;
    }
    if (gen->parsed()) {
      ModuleHandle m;
      ok(qea_module_from_recipe(cfg.c, recipe.c_str(), &m.m));
      Text out;
      ok(qea_module_to_json(m.m, &out.s));
      emit(out.s, gen_out);
      return 0;
    }
    if (clear->parsed()) {
      std::size_t removed = 0;
      ok(qea_cache_clear(cfg.c, &removed));
      std::cout << "removed " << removed << " cached resolution" << (removed == 1 ? "" : "s") << "\n";
      return 0;
    }
  } catch (const Failure& f) {
    const char* msg = qea_last_error_message();
    if (msg && *msg) std::cerr << "error: " << msg << "\n";
    return qea_status_exit_code(f.status);
  }
  return 0;
}
