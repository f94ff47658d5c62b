// Runs the acceptance criteria over the default configurations and prints
// one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qea/checks.hpp"
#include "qea/error.hpp"

namespace {

struct Named {
  const char* name;
  qea::Config cfg;
};

qea::Config config(std::uint32_t ell, std::uint32_t m, std::uint32_t p) {
  qea::Config c;
  c.ell = ell;
  c.m = m;
  c.p = p;
  c.r = 1;
  c.n_max = 10;
  c.d_max = 4;
  c.iso_trials = 64;
  c.battery_size = 50;
  return c;
}

std::vector<std::string> configs_for(int n) {
  if (n == 6) return {"C1"};  // runs its own one-variable algebras
  if (n == 9 || n == 13) return {"C1", "C2"};
  return {"C1", "C2", "C3"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-14)")->check(CLI::Range(1, qea::criterion_count));
  app.add_flag("-v,--verbose", verbose, "print every check");
  CLI11_PARSE(app, argc, argv);

  std::map<std::string, qea::Config> configs{
      {"C1", config(2, 2, 5)}, {"C2", config(3, 2, 7)}, {"C3", config(2, 3, 5)}};
  std::map<std::string, std::unique_ptr<qea::Session>> sessions;
  bool all_passed = true;
  for (int n = 1; n <= qea::criterion_count; ++n) {
    if (only && n != only) continue;
    bool passed = true;
    std::string where;
    auto start = std::chrono::steady_clock::now();
    for (auto& name : configs_for(n)) {
      where += (where.empty() ? "" : ",") + name;
      auto& s = sessions[name];
      std::vector<qea::CheckResult> results;
      try {
        if (!s) s = std::make_unique<qea::Session>(configs[name]);
        results = qea::run_criterion(n, *s);
      } catch (const qea::Error& e) {
        std::cerr << "  " << name << ": " << e.what() << "\n";
        passed = false;
        continue;
      }
      for (auto& c : results) {
        bool bad = c.status == qea::Status::Fail;
        passed &= !bad;
        if (bad || verbose) {
          std::cerr << "  " << name << " [" << qea::to_string(c.status) << "] " << c.name
                    << "\n    expected " << c.expected.dump() << "\n    observed " << c.observed.dump();
          if (!c.note.empty()) std::cerr << "\n    " << c.note;
          std::cerr << "\n";
        }
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%s] (%.1fs)\n", passed ? "PASS" : "FAIL", n, qea::criterion_title(n),
                where.c_str(), secs);
    std::fflush(stdout);
    all_passed &= passed;
  }
  return all_passed ? 0 : 1;
}
