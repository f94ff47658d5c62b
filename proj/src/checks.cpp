#include "qea/checks.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <tuple>
#include <future>
#include <random>
#include <set>
#include <thread>

#include "qea/error.hpp"

namespace qea {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

Session::Session(Config cfg) : cfg_(std::move(cfg)), ctx_(make_algebra(cfg_)) {}

std::shared_ptr<const CohomologyRing> Session::ring() {
  if (!ring_) ring_ = cohomology_ring(ctx_, cfg_.n_max, effective_cache_dir(cfg_), cfg_.budget);
  return ring_;
}

RingProvider Session::ring_provider() {
  return [this] { return ring(); };
}

Rng Session::rng(int criterion, std::uint64_t stream) const {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg_.rng_seed), static_cast<std::uint32_t>(cfg_.rng_seed >> 32),
                    static_cast<std::uint32_t>(criterion), static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

const char* criterion_title(int n) {
  static const char* titles[] = {
      "",
      "algebra axioms",
      "nilpotency of tau",
      "rank of tau on the regular module",
      "V(lambda) and V'(lambda)",
      "betti numbers of k",
      "cohomology of simples in one variable",
      "empty rank variety iff projective",
      "varieties of V(lambda)",
      "rank and support varieties agree",
      "Carlson modules realize hypersurfaces",
      "restriction of the generators",
      "rank variety properties",
      "modules over the X-subalgebra",
      "annihilator of tau in A",
  };
  if (n < 1 || n > criterion_count) throw Error(ErrorCode::InvalidArgument, "no criterion " + std::to_string(n));
  return titles[n];
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "algebra") return {1, 2, 3, 14};
  if (suite == "modules") return {4, 12};
  if (suite == "dade") return {7};
  if (suite == "cohomology") return {5, 6, 11};
  if (suite == "avrunin-scott") return {8, 9};
  if (suite == "carlson") return {10};
  if (suite == "lambda") return {13};
  if (suite == "all") {
    std::vector<int> all;
    for (int i = 1; i <= criterion_count; ++i) all.push_back(i);
    return all;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
}

namespace {

struct Sink {
  int criterion;
  std::vector<CheckResult> out;
  void add(std::string name, bool ok, Json expected, Json observed, std::string note = {}) {
    out.push_back({criterion, std::move(name), ok ? Status::Pass : Status::Fail, std::move(expected),
                   std::move(observed), std::move(note)});
  }
  void skip(std::string name, std::string note) {
    out.push_back({criterion, std::move(name), Status::Skip, nullptr, nullptr, std::move(note)});
  }
};

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<Point> sorted(const Field& f, std::vector<Point> pts) {
  sort_points(f, pts);
  return pts;
}

bool subset(const Field& f, const std::vector<Point>& a, const std::vector<Point>& b) {
  auto sb = sorted(f, b);
  for (auto& x : a)
    if (!std::binary_search(sb.begin(), sb.end(), x, [&](const Point& u, const Point& v) { return point_less(f, u, v); }))
      return false;
  return true;
}

std::vector<Point> unite(const Field& f, std::vector<Point> a, const std::vector<Point>& b) {
  a.insert(a.end(), b.begin(), b.end());
  sort_points(f, a);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Point> intersect(const Field& f, const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  for (auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  return sorted(f, out);
}

std::string label(const Field& f, std::span<const FieldElem> pt) {
  std::string s = "[";
  for (std::size_t i = 0; i < pt.size(); ++i) {
    if (i) s += ",";
    if (f.is_prime()) {
      s += std::to_string(pt[i].code);
    } else {
      s += "[";
      auto c = f.coeffs(pt[i]);
      for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
      s += "]";
    }
  }
  return s + "]";
}

std::string char_label(const AlgebraCtx& ctx, Packed chi) {
  std::string s = "[";
  for (std::uint32_t i = 0; i < ctx.m(); ++i) s += (i ? "," : "") + std::to_string(ctx.digit(chi, i));
  return s + "]";
}

std::vector<Point> orbit_reps(const AlgebraCtx& ctx) {
  std::vector<Point> reps;
  for (auto& pt : rational_points(ctx.field(), ctx.m()))
    if (orbit_rep(ctx, pt) == pt) reps.push_back(pt);
  return reps;
}

Point random_nonzero(const Field& f, std::uint32_t m, Rng& rng) {
  while (true) {
    auto v = random_point(f, m, rng);
    if (!linalg::is_zero_vec(v)) return v;
  }
}

// Evaluates fn(0..n-1) on worker threads; results keep their index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<T> out(n);
  std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---- algebra

AlgElem random_alg(const AlgebraCtx& ctx, Rng& rng) {
  // sparse elements; products are trilinear, so a few terms per factor
  // exercise every structure constant over the sample
  AlgElem x(ctx);
  const std::size_t terms = 1 + rng() % 6;
  for (std::size_t t = 0; t < terms; ++t) x.add_term(rng() % ctx.dim(), random_elem(ctx.field(), rng));
  return x;
}

using Triple = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, FieldElem>;

Triple coassoc_side(const AlgElem& x, bool left) {
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  Triple out;
  TensorElem dx = coproduct(x);
  for (auto& [ij, c] : dx.terms()) {
    TensorElem inner = coproduct(AlgElem::basis(ctx, left ? ij.first : ij.second, f.one()));
    for (auto& [kl, d] : inner.terms()) {
      auto key = left ? std::tuple{kl.first, kl.second, ij.second} : std::tuple{ij.first, kl.first, kl.second};
      auto& slot = out[key];
      slot = f.add(slot, f.mul(c, d));
      if (!slot.code) out.erase(key);
    }
  }
  return out;
}

// Names of the Hopf axioms that fail on x.
std::vector<std::string> hopf_failures(const AlgElem& x) {
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  std::vector<std::string> bad;
  if (coassoc_side(x, true) != coassoc_side(x, false)) bad.push_back("coassociativity");
  AlgElem lc(ctx), rc(ctx), sl(ctx), sr(ctx);
  TensorElem dx = coproduct(x);
  for (auto& [ij, c] : dx.terms()) {
    AlgElem a = AlgElem::basis(ctx, ij.first, f.one()), b = AlgElem::basis(ctx, ij.second, f.one());
    lc = add(lc, scale(f.mul(c, counit(a)), b));
    rc = add(rc, scale(f.mul(c, counit(b)), a));
    sl = add(sl, scale(c, multiply(antipode(a), b)));
    sr = add(sr, scale(c, multiply(a, antipode(b))));
  }
  if (!(lc == x) || !(rc == x)) bad.push_back("counit");
  AlgElem unit = scale(counit(x), one(ctx));
  if (!(sl == unit) || !(sr == unit)) bad.push_back("antipode");
  return bad;
}

void criterion_1(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  Rng rng = s.rng(1);
  constexpr std::size_t triples = 10000;
  std::size_t fails = 0;
  for (std::size_t t = 0; t < triples; ++t) {
    AlgElem a = random_alg(ctx, rng), b = random_alg(ctx, rng), c = random_alg(ctx, rng);
    if (!(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)))) ++fails;
  }
  out.add("associativity on random triples", fails == 0, 0, fails, std::to_string(triples) + " triples");

  std::vector<std::pair<std::string, AlgElem>> gens;
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    gens.emplace_back("X" + std::to_string(i + 1), gen_x(ctx, i));
    gens.emplace_back("g" + std::to_string(i + 1), gen_g(ctx, i));
  }
  Json bad = Json::array();
  for (auto& [name, x] : gens)
    for (auto& axiom : hopf_failures(x)) bad.push_back(axiom + " at " + name);
  for (auto& [na, a] : gens)
    for (auto& [nb, b] : gens) {
      if (!(coproduct(multiply(a, b)) == tensor_multiply(coproduct(a), coproduct(b))))
        bad.push_back("coproduct not multiplicative at " + na + nb);
      if (counit(multiply(a, b)) != ctx.field().mul(counit(a), counit(b)))
        bad.push_back("counit not multiplicative at " + na + nb);
      if (!(antipode(multiply(a, b)) == multiply(antipode(b), antipode(a))))
        bad.push_back("antipode not anti-multiplicative at " + na + nb);
    }
  // the defining relations must survive the coproduct
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    if (!coproduct(power(gen_x(ctx, i), ctx.ell())).terms().empty())
      bad.push_back("coproduct of X" + std::to_string(i + 1) + "^ell");
    TensorElem one_one(ctx);
    one_one.add_term(0, 0, ctx.field().one());
    if (!(coproduct(power(gen_g(ctx, i), ctx.ell())) == one_one))
      bad.push_back("coproduct of g" + std::to_string(i + 1) + "^ell");
  }
  out.add("Hopf axioms on generators", bad.empty(), Json::array(), bad);
}

void criterion_2(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  Rng rng = s.rng(2);
  std::size_t fails = 0, low = 0;
  for (int t = 0; t < 100; ++t) {
    auto lambda = random_nonzero(ctx.field(), ctx.m(), rng);
    AlgElem x = tau(ctx, lambda);
    if (!power(x, ctx.ell()).is_zero()) ++fails;
    if (power(x, ctx.ell() - 1).is_zero()) ++low;
  }
  out.add("tau^ell = 0", fails == 0, 0, fails, "100 random points");
  out.add("tau^(ell-1) != 0", low == 0, 0, low, "100 random points");
}

void criterion_3(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  Rng rng = s.rng(3);
  AModule reg = regular_module(s.ctx());
  const std::size_t want = ipow(ctx.ell(), 2 * ctx.m()) - ipow(ctx.ell(), 2 * ctx.m() - 1);
  Json seen = Json::array();
  bool ok = true;
  for (int t = 0; t < 20; ++t) {
    auto lambda = random_nonzero(ctx.field(), ctx.m(), rng);
    std::size_t r = linalg::rank(ctx.field(), restrict_to_tau(reg, lambda));
    ok &= r == want;
    seen.push_back(r);
  }
  out.add("rank of tau on regular", ok, want, seen, "20 random points");
}

Matrix left_mult(const AlgebraCtx& ctx, const AlgElem& a, bool right) {
  const Field& f = ctx.field();
  Matrix out(ctx.dim(), ctx.dim());
  for (std::size_t col = 0; col < ctx.dim(); ++col)
    for (auto& [k, c] : a.terms()) {
      auto prod = right ? ctx.basis_product(col, k) : ctx.basis_product(k, col);
      if (prod) out(prod->first, col) = f.add(out(prod->first, col), f.mul(c, prod->second));
    }
  return out;
}

void criterion_14(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  const Field& f = ctx.field();
  Rng rng = s.rng(14);
  const std::size_t n = ctx.dim();
  const Packed top = static_cast<Packed>(ctx.lambda_dim() - 1);
  std::vector<Vec> lines;
  for (Packed chi = 0; chi < ctx.lambda_dim(); ++chi) {
    AlgElem e = multiply(idempotent(ctx, chi), AlgElem::basis(ctx, ctx.basis_index(top, 0), f.one()));
    Vec v(n);
    for (auto& [k, c] : e.terms()) v[k] = c;
    lines.push_back(std::move(v));
  }
  std::size_t counter = 0, hits = 0, constrained = 0;
  for (int t = 0; t < 100; ++t) {
    auto lambda = random_nonzero(f, ctx.m(), rng);
    AlgElem x = tau(ctx, lambda);
    Matrix lt = left_mult(ctx, x, false);
    Matrix rp = left_mult(ctx, power(x, ctx.ell() - 1), true);
    // plain sample from the kernel of left multiplication
    Matrix ker = linalg::nullspace(f, lt);
    Vec a(n);
    for (std::size_t b = 0; b < ker.rows(); ++b) f.axpy(a, ker.row(b), random_elem(f, rng));
    Vec img = linalg::apply(f, rp, a);
    for (auto& line : lines) {
      if (linalg::rank(f, Matrix::from_rows({line, img}, n)) > 1) continue;
      ++hits;
      if (!linalg::is_zero_vec(img)) ++counter;
    }
    // sample from the elements that satisfy the hypothesis for a random simple
    const Vec& line = lines[rng() % lines.size()];
    Matrix sys(2 * n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        sys(r, c) = lt(r, c);
        sys(n + r, c) = rp(r, c);
      }
      sys(n + r, n) = f.neg(line[r]);
    }
    Matrix sol = linalg::nullspace(f, sys);
    Vec z(n + 1);
    for (std::size_t b = 0; b < sol.rows(); ++b) f.axpy(z, sol.row(b), random_elem(f, rng));
    Vec a2(z.begin(), z.begin() + n);
    if (!linalg::is_zero_vec(linalg::apply(f, rp, a2))) ++counter;
    // the scalar must vanish on the whole solution space
    for (std::size_t b = 0; b < sol.rows(); ++b)
      if (sol(b, n).code) ++constrained;
  }
  out.add("counterexamples among kernel samples", counter == 0, 0, counter,
          "100 points; " + std::to_string(hits) + " plain samples landed on a line, zero included");
  out.add("solution spaces with a nonzero scalar", constrained == 0, 0, constrained);
}

// ---- modules

void criterion_4(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  Rng rng = s.rng(4);
  const std::size_t dv = ipow(ctx.ell(), 2 * ctx.m() - 1), dvp = (ctx.ell() - 1) * dv;
  for (int t = 0; t < 5; ++t) {
    auto lambda = random_nonzero(ctx.field(), ctx.m(), rng);
    std::string at = " at " + label(ctx.field(), lambda);
    AModule v = v_module(s.ctx(), lambda, false), vp = v_module(s.ctx(), lambda, true);
    out.add("dim V" + at, v.dim() == dv, dv, v.dim());
    out.add("dim V'" + at, vp.dim() == dvp, dvp, vp.dim());
    Rng iso = s.rng(4, 1 + t);
    bool a = is_isomorphic(omega(v), vp, s.config().iso_trials, iso);
    bool b = is_isomorphic(omega(vp), v, s.config().iso_trials, iso);
    out.add("Omega V = V'" + at, a, true, a);
    out.add("Omega V' = V" + at, b, true, b);
  }
}

// Random weight vector of M in a weight basis.
Vec random_weight_vector(const AModule& m, Rng& rng) {
  auto w = m.weights();
  Packed pick = w[rng() % w.size()];
  Vec v(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (w[i] == pick) v[i] = random_elem(m.field(), rng);
  return v;
}

void criterion_12(Session& s, Sink& out) {
  const Field& f = s.ctx()->field();
  Rng rng = s.rng(12);
  std::size_t add_bad = 0, omega_bad = 0, three_bad = 0, proper = 0;
  for (int t = 0; t < 20; ++t) {
    AModule m = random_module(s.ctx(), rng), n = random_module(s.ctx(), rng);
    auto vm = rank_variety(m).points, vn = rank_variety(n).points;
    if (rank_variety(direct_sum(m, n)).points != unite(f, vm, vn)) ++add_bad;
    if (rank_variety(omega(m)).points != vm || rank_variety(omega_inverse(m)).points != vm) ++omega_bad;

    AModule w = to_weight_basis(tensor(m, n));
    if (w.dim() == 0) w = to_weight_basis(direct_sum(m, n));
    if (w.dim() == 0) continue;
    std::vector<Vec> gens{random_weight_vector(w, rng)};
    if (rng() % 2) gens.push_back(random_weight_vector(w, rng));
    SubQuotient sq = generated_submodule(w, gens);
    auto a = rank_variety(sq.sub).points, b = rank_variety(w).points, c = rank_variety(sq.quotient).points;
    if (sq.sub.dim() > 0 && sq.quotient.dim() > 0) ++proper;
    if (!subset(f, a, unite(f, b, c)) || !subset(f, b, unite(f, a, c)) || !subset(f, c, unite(f, a, b))) ++three_bad;
  }
  out.add("additivity under direct sums", add_bad == 0, 0, add_bad, "20 random pairs");
  out.add("invariance under Omega and its inverse", omega_bad == 0, 0, omega_bad, "20 random modules");
  out.add("two of three on exact sequences", three_bad == 0, 0, three_bad,
          "20 sequences, " + std::to_string(proper) + " with both ends nonzero");
}

void criterion_7(Session& s, Sink& out) {
  const std::size_t n = s.config().battery_size;
  struct Row {
    bool empty = false, projective = false;
  };
  auto rows = parallel_map<Row>(n, [&](std::size_t i) {
    Rng rng = s.rng(7, i);
    AModule m = random_module(s.ctx(), rng);
    return Row{rank_variety(m).empty(), is_projective(m)};
  });
  std::size_t bad = 0, proj = 0;
  Json which = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    proj += rows[i].projective;
    if (rows[i].empty != rows[i].projective) {
      ++bad;
      which.push_back(i);
    }
  }
  out.add("empty rank variety iff projective", bad == 0, 0, bad,
          std::to_string(n) + " modules, " + std::to_string(proj) + " projective");
  if (bad) out.out.back().observed = Json{{"exceptions", bad}, {"indices", which}};
}

// ---- cohomology

void criterion_5(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  const std::size_t n_max = s.config().n_max;
  auto dims = ext_dims(trivial_module(s.ctx()), trivial_module(s.ctx()), n_max);
  Json want = Json::array(), got = Json::array();
  bool ok = true;
  for (std::size_t n = 0; n <= n_max; ++n) {
    // degree-n/2 monomials in m variables for even n
    std::size_t count = 0;
    if (n % 2 == 0) {
      count = 1;
      for (std::size_t i = 1; i < ctx.m(); ++i) count = count * (n / 2 + i) / i;
    }
    want.push_back(count);
    got.push_back(dims[n]);
    ok &= count == dims[n];
  }
  out.add("dim Ext^n(k,k)", ok, want, got);
}

void criterion_6(Session& s, Sink& out) {
  (void)s;
  for (auto [ell, p] : {std::pair<std::uint32_t, std::uint32_t>{2, 5}, {3, 7}}) {
    auto ctx = make_algebra(ell, 1, p, 1);
    for (Packed i = 0; i < ell; ++i) {
      auto dims = ext_dims(trivial_module(ctx), simple_module(ctx, i), 6);
      Json want = Json::array(), got = Json::array();
      bool ok = true;
      for (std::size_t n = 0; n <= 6; ++n) {
        std::size_t expect = (i == 0 && n % 2 == 0) || (i == 1 && n % 2 == 1) ? 1 : 0;
        want.push_back(expect);
        got.push_back(dims[n]);
        ok &= dims[n] == expect;
      }
      out.add("H^n(S_" + std::to_string(i) + ") for ell=" + std::to_string(ell), ok, want, got);
    }
  }
}

void criterion_11(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  const Field& f = ctx.field();
  auto ring = s.ring();
  std::size_t bad = 0, orbit_bad = 0, checked = 0;
  for (auto& pt : rational_points(f, ctx.m())) {
    for (std::uint32_t i = 0; i < ctx.m(); ++i) {
      Exponent e(ctx.m(), 0);
      e[i] = 1;
      Cocycle y = ring->monomial(e);
      FieldElem at = ring->restrict_class(y, pt);
      ++checked;
      if (at != f.pow(pt[i], ctx.ell())) ++bad;
      for (auto& other : orbit_of(ctx, pt))
        if (ring->restrict_class(y, other) != at) ++orbit_bad;
    }
  }
  out.add("restriction of y_i is lambda_i^ell", bad == 0, 0, bad, std::to_string(checked) + " pairs");
  out.add("restriction is constant on orbits", orbit_bad == 0, 0, orbit_bad);
}

// ---- varieties

struct Named {
  std::string name;
  AModule module;
};

Json pts(const Field& f, const std::vector<Point>& p) { return points_to_json(f, p); }

void criterion_8(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  const Field& f = ctx.field();
  auto ring = s.ring();
  auto all = rational_points(f, ctx.m());
  struct Row {
    std::vector<Point> rank, support;
    bool stabilized = false;
  };
  auto rows = parallel_map<Row>(all.size(), [&](std::size_t i) {
    AModule v = v_module(s.ctx(), all[i], false);
    auto sv = support_variety(*ring, v, s.config().n_max, s.config().d_max);
    return Row{rank_variety(v).points, sv.points, sv.stabilized};
  });
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::string at = label(f, all[i]);
    auto orbit = orbit_of(ctx, all[i]);
    out.add("rank variety of V" + at, rows[i].rank == orbit, pts(f, orbit), pts(f, rows[i].rank));
    std::vector<Point> want{psi(ctx, all[i])};
    out.add("support variety of V" + at, rows[i].support == want, pts(f, want), pts(f, rows[i].support),
            rows[i].stabilized ? "" : "not stabilized");
  }
}

AModule carlson(Session& s, const std::string& poly) {
  auto ring = s.ring();
  return carlson_module(*ring, ring->cocycle(parse_poly(s.ctx()->field(), s.ctx()->m(), poly)));
}

std::vector<Named> avrunin_scott_battery(Session& s) {
  auto ctx = s.ctx();
  const Field& f = ctx->field();
  std::vector<Named> b;
  for (Packed chi = 0; chi < ctx->lambda_dim(); ++chi)
    b.push_back({chi == 0 ? "trivial" : "simple:" + char_label(*ctx, chi), simple_module(ctx, chi)});
  b.push_back({"regular", regular_module(ctx)});
  auto reps = orbit_reps(*ctx);
  for (auto& r : reps) {
    b.push_back({"v:" + label(f, r), v_module(ctx, r, false)});
    b.push_back({"vprime:" + label(f, r), v_module(ctx, r, true)});
  }
  for (int i : {1, 2, -1, -2}) b.push_back({"omega^" + std::to_string(i) + ":trivial", omega_power(trivial_module(ctx), i)});
  for (std::string z : {"y1", "y2", "y1+y2"})
    if (ctx->m() >= 2) b.push_back({"lzeta:" + z, carlson(s, z)});
  Rng rng = s.rng(9);
  for (int t = 0; t < 5; ++t) {
    const Point& a = reps[rng() % reps.size()];
    // one pair with a common point keeps a non-projective tensor in the battery
    const Point& c = t == 0 ? a : reps[rng() % reps.size()];
    b.push_back({"tensor:v:" + label(f, a) + ",v:" + label(f, c),
                 tensor(v_module(ctx, a, false), v_module(ctx, c, false))});
  }
  for (int t = 0; t < 20; ++t) {
    std::uint64_t seed = rng();
    Rng r(seed);
    b.push_back({"random:" + std::to_string(seed), random_module(ctx, r)});
  }
  return b;
}

void criterion_9(Session& s, Sink& out) {
  const AlgebraCtx& ctx = *s.ctx();
  const Field& f = ctx.field();
  auto ring = s.ring();
  auto battery = avrunin_scott_battery(s);
  RootExtension ext = root_extension(ctx);
  struct Row {
    std::vector<Point> image, closure, support;
    bool stabilized = false;
  };
  auto rows = parallel_map<Row>(battery.size(), [&](std::size_t i) {
    const AModule& m = battery[i].module;
    auto sv = support_variety(*ring, m, s.config().n_max, s.config().d_max);
    return Row{sorted(f, psi_image(ctx, rank_variety(m).points)), sorted(f, psi_closure(m, ext)), sv.points,
               sv.stabilized};
  });
  std::size_t strict = 0;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const Row& r = rows[i];
    bool ok = r.support == r.closure && subset(f, r.image, r.support) && r.stabilized;
    if (r.image != r.closure) ++strict;
    Json obs{{"support", pts(f, r.support)}, {"stabilized", r.stabilized}};
    std::string note;
    if (r.image != r.closure) note = "rational rank points cover part of the support; the rest has non-rational ell-th roots";
    out.add(battery[i].name, ok, Json{{"support", pts(f, r.closure)}, {"stabilized", true}}, obs, note);
  }
  out.add("battery size", true, nullptr, battery.size(),
          std::to_string(strict) + " modules whose support exceeds the image of rational rank points");
}

void criterion_10(Session& s, Sink& out) {
  auto ctx = s.ctx();
  const Field& f = ctx->field();
  auto ring = s.ring();
  const std::size_t n_max = s.config().n_max;
  const std::uint32_t d_max = s.config().d_max;
  auto all = rational_points(f, ctx->m());
  auto zero_at = [&](std::initializer_list<std::uint32_t> coords) {
    std::vector<Point> z;
    for (auto& p : all) {
      bool ok = true;
      for (auto c : coords) ok &= p[c].code == 0;
      if (ok) z.push_back(p);
    }
    return z;
  };
  AModule l1 = carlson(s, "y1");
  if (ctx->m() >= 2) {
    AModule l12 = tensor(l1, carlson(s, "y2"));
    auto sv = support_variety(*ring, l12, n_max, d_max);
    auto want = zero_at({0, 1});
    out.add("support of L_y1 (x) L_y2", sv.points == want, pts(f, want), pts(f, sv.points));
  } else {
    out.skip("support of L_y1 (x) L_y2", "needs two variables");
  }
  std::vector<Named> ms;
  ms.push_back({"trivial", trivial_module(ctx)});
  if (ctx->lambda_dim() > 1) ms.push_back({"simple:" + char_label(*ctx, 1), simple_module(ctx, 1)});
  ms.push_back({"regular", regular_module(ctx)});
  auto reps = orbit_reps(*ctx);
  for (std::size_t i = 0; i < std::min<std::size_t>(2, reps.size()); ++i)
    ms.push_back({"v:" + label(f, reps[i]), v_module(ctx, reps[i], false)});
  ms.push_back({"vprime:" + label(f, reps.back()), v_module(ctx, reps.back(), true)});
  ms.push_back({"omega^1:trivial", omega(trivial_module(ctx))});
  ms.push_back({"omega^-1:trivial", omega_inverse(trivial_module(ctx))});
  Rng rng = s.rng(10);
  while (ms.size() < 10) {
    std::uint64_t seed = rng();
    Rng r(seed);
    ms.push_back({"random:" + std::to_string(seed), random_module(ctx, r)});
  }
  auto hyper = zero_at({0});
  struct Row {
    std::vector<Point> cut, alone;
  };
  auto rows = parallel_map<Row>(ms.size(), [&](std::size_t i) {
    return Row{support_variety(*ring, tensor(ms[i].module, l1), n_max, d_max).points,
               support_variety(*ring, ms[i].module, n_max, d_max).points};
  });
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto want = intersect(f, hyper, rows[i].alone);
    out.add("support of " + ms[i].name + " (x) L_y1", rows[i].cut == want, pts(f, want), pts(f, rows[i].cut));
  }
}

// ---- lambda

void criterion_13(Session& s, Sink& out) {
  auto ctx = s.ctx();
  const Field& f = ctx->field();
  auto all = rational_points(f, ctx->m());
  auto disagreements = parallel_map<std::size_t>(50, [&](std::size_t i) {
    Rng rng = s.rng(13, i);
    LambdaModule m = random_lambda_module(ctx, rng);
    auto var = lambda_rank_variety(m).points;
    std::size_t bad = 0;
    for (auto& pt : all) {
      bool in = std::find(var.begin(), var.end(), pt) != var.end();
      bad += in != stable_hom_criterion(m, pt);
    }
    return bad;
  });
  std::size_t bad = 0;
  for (auto d : disagreements) bad += d;
  out.add("rank variety vs stable Hom", bad == 0, 0, bad, "50 random modules at every rational point");

  for (auto [ell, p] : {std::pair<std::uint32_t, std::uint32_t>{2, 5}, {3, 7}}) {
    auto field = Field::create(p, 1);
    auto dims = hochschild_m1_dims(*field, ell, 4);
    std::vector<std::size_t> got(dims.begin() + 1, dims.end()), want(4, ell - 1);
    out.add("HH^1..4 for ell=" + std::to_string(ell), got == want, want, got);
  }

  auto ring = s.ring();
  RootExtension ext = root_extension(*ctx);
  std::vector<std::pair<std::string, LambdaModule>> battery{{"trivial", lambda_trivial(ctx)},
                                                            {"free", lambda_regular(ctx)}};
  for (int t = 0; t < 10; ++t) {
    std::uint64_t seed = s.rng(13, 1000 + t)();
    Rng r(seed);
    battery.emplace_back("random:" + std::to_string(seed), random_lambda_module(ctx, r));
  }
  struct Row {
    std::vector<Point> support, closure, image;
    bool stabilized = false;
  };
  auto rows = parallel_map<Row>(battery.size(), [&](std::size_t i) {
    const LambdaModule& m = battery[i].second;
    auto sv = lambda_support_variety(*ring, m, s.config().n_max, s.config().d_max);
    return Row{sv.points, sorted(f, psi_closure(induce_from_lambda(ctx, m), ext)),
               sorted(f, psi_image(*ctx, lambda_rank_variety(m).points)), sv.stabilized};
  });
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const Row& r = rows[i];
    bool ok = r.support == r.closure && subset(f, r.image, r.support) && r.stabilized;
    out.add("support of induce:" + battery[i].first, ok, Json{{"support", pts(f, r.closure)}, {"stabilized", true}},
            Json{{"support", pts(f, r.support)}, {"stabilized", r.stabilized}});
  }
}

}  // namespace

std::vector<CheckResult> run_criterion(int n, Session& s) {
  criterion_title(n);
  Sink sink{n, {}};
  try {
    switch (n) {
      case 1: criterion_1(s, sink); break;
      case 2: criterion_2(s, sink); break;
      case 3: criterion_3(s, sink); break;
      case 4: criterion_4(s, sink); break;
      case 5: criterion_5(s, sink); break;
      case 6: criterion_6(s, sink); break;
      case 7: criterion_7(s, sink); break;
      case 8: criterion_8(s, sink); break;
      case 9: criterion_9(s, sink); break;
      case 10: criterion_10(s, sink); break;
      case 11: criterion_11(s, sink); break;
      case 12: criterion_12(s, sink); break;
      case 13: criterion_13(s, sink); break;
      case 14: criterion_14(s, sink); break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ResourceBudgetExceeded) throw;
    sink.add("error", false, nullptr, to_string(e.code()), e.what());
  }
  return sink.out;
}

Json check_to_json(const CheckResult& c) {
  Json j{{"criterion", c.criterion},
         {"name", c.name},
         {"status", to_string(c.status)},
         {"expected", c.expected},
         {"observed", c.observed}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json run_suite(const std::string& suite, const Config& cfg) {
  auto criteria = suite_criteria(suite);
  Session s(cfg);
  const Field& f = s.ctx()->field();
  Json checks = Json::array();
  bool passed = true;
  for (int n : criteria)
    for (auto& c : run_criterion(n, s)) {
      passed &= c.status != Status::Fail;
      checks.push_back(check_to_json(c));
    }
  return Json{{"suite", suite},
              {"config", config_to_json(cfg)},
              {"field", {{"p", f.characteristic()}, {"r", f.degree()}, {"q", field_elem_to_json(f, s.ctx()->field_ctx().q)}}},
              {"rng", {{"name", "mt19937_64"}, {"seed", cfg.rng_seed}}},
              {"checks", checks},
              {"passed", passed}};
}

}  // namespace qea
