#pragma once

// The verification suites. Each criterion runs in the algebra of one Config
// and yields a list of named checks with expected and observed values.

#include <string>
#include <vector>

#include "qea/io.hpp"

namespace qea {

enum class Status { Pass, Fail, Skip };
const char* to_string(Status s);

struct CheckResult {
  int criterion = 0;
  std::string name;
  Status status = Status::Skip;
  Json expected;
  Json observed;
  std::string note;
};

// Shared state for one configuration: the algebra and a lazily built
// cohomology ring (cached on disk when a cache directory is set).
class Session {
 public:
  explicit Session(Config cfg);
  const Config& config() const { return cfg_; }
  const std::shared_ptr<const AlgebraCtx>& ctx() const { return ctx_; }
  std::shared_ptr<const CohomologyRing> ring();
  RingProvider ring_provider();
  // mt19937_64 seeded from (rng_seed, criterion, stream).
  Rng rng(int criterion, std::uint64_t stream = 0) const;

 private:
  Config cfg_;
  std::shared_ptr<const AlgebraCtx> ctx_;
  std::shared_ptr<const CohomologyRing> ring_;
};

constexpr int criterion_count = 14;
const char* criterion_title(int n);
// Throws InvalidArgument for an unknown suite name.
std::vector<int> suite_criteria(const std::string& suite);
// Failures are recorded as checks; only ResourceBudgetExceeded escapes.
std::vector<CheckResult> run_criterion(int n, Session& s);

Json check_to_json(const CheckResult& c);
// {suite, config, field, rng, checks, passed}; no timings, so equal inputs
// give byte-identical reports.
Json run_suite(const std::string& suite, const Config& cfg);

}  // namespace qea
