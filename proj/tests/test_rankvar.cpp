#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "common.hpp"
#include "qea/error.hpp"
#include "qea/projective.hpp"
#include "qea/rankvar.hpp"

using namespace qea;
using testing_support::algebra;
using testing_support::c1;
using testing_support::c2;
using testing_support::c3;
using testing_support::ints;

namespace {

bool subset(const std::vector<Point>& a, const std::vector<Point>& b) {
  for (auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

std::vector<Point> unite(const Field& f, std::vector<Point> a, const std::vector<Point>& b) {
  a.insert(a.end(), b.begin(), b.end());
  sort_points(f, a);
  return a;
}

}  // namespace

TEST_CASE("rational points") {
  for (auto [p, r, m] : {std::tuple{5u, 1u, 2u}, std::tuple{7u, 1u, 2u}, std::tuple{5u, 1u, 3u}, std::tuple{3u, 2u, 2u}}) {
    auto f = Field::create(p, r);
    auto pts = rational_points(*f, m);
    std::size_t q = f->order(), expected = 0, pw = 1;
    for (std::uint32_t i = 0; i < m; ++i, pw *= q) expected += pw;
    CHECK(pts.size() == expected);
    for (auto& pt : pts) CHECK(normalize_point(*f, pt) == pt);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(point_less(*f, pts[i - 1], pts[i]));
  }
  auto f = Field::create(5, 1);
  CHECK_THROWS_AS(normalize_point(*f, ints(*f, {0, 0})), Error);
}

TEST_CASE("orbits") {
  auto ctx = c1();
  const Field& f = ctx->field();
  auto o = orbit_of(*ctx, ints(f, {1, 1}));
  REQUIRE(o.size() == 2);
  CHECK(o[0] == ints(f, {1, 1}));
  CHECK(o[1] == ints(f, {1, 4}));
  CHECK(orbit_of(*ctx, ints(f, {1, 0})).size() == 1);
  // brute force over the nine group elements with q = 2 in F_7
  auto c = c2();
  const Field& f7 = c->field();
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = 0; b < 3; ++b) {
      std::uint32_t x = 1, y = 1;
      for (std::uint32_t k = 0; k < a; ++k) x = x * 2 % 7;
      for (std::uint32_t k = 0; k < b; ++k) y = y * 2 % 7;
      std::uint32_t inv = 1;
      while (inv * x % 7 != 1) ++inv;
      seen.insert({1, y * inv % 7});
    }
  CHECK(orbit_of(*c, ints(f7, {1, 1})).size() == seen.size());
  CHECK(seen.size() == 3);
}

TEST_CASE("psi") {
  auto ctx = algebra(2, 3, 5);
  const Field& f = ctx->field();
  CHECK(psi(*ctx, ints(f, {1, 1, 0})) == ints(f, {1, 1, 0}));
  auto c = c1();
  CHECK(psi(*c, ints(c->field(), {1, 2})) == ints(c->field(), {1, 4}));
  for (auto a : {c1(), c2(), c3()}) {
    auto pts = rational_points(a->field(), a->m());
    for (auto& x : pts) {
      for (auto& y : orbit_of(*a, x)) CHECK(psi(*a, y) == psi(*a, x));
      for (auto& y : pts) CHECK((psi(*a, x) == psi(*a, y)) == (orbit_of(*a, x) == orbit_of(*a, y)));
    }
  }
}

TEST_CASE("membership examples") {
  Rng rng(3);
  for (auto ctx : {c1(), c2(), c3()}) {
    const Field& f = ctx->field();
    AModule k = trivial_module(ctx), reg = regular_module(ctx);
    auto pts = rational_points(f, ctx->m());
    auto vk = rank_variety(k);
    CHECK(vk.points == pts);
    CHECK(rank_variety(reg).empty());
    for (int t = 0; t < 3; ++t) {
      auto mu = normalize_point(f, random_point(f, ctx->m(), rng));
      AModule v = v_module(ctx, mu, false);
      auto orbit = orbit_of(*ctx, mu);
      for (auto& pt : pts) CHECK(membership(v, pt) == (std::find(orbit.begin(), orbit.end(), pt) != orbit.end()));
      auto var = rank_variety(v);
      REQUIRE(var.orbit_reps.size() == 1);
      CHECK(var.orbit_reps[0] == orbit.front());
    }
  }
}

TEST_CASE("rank variety properties on random modules") {
  Rng rng(77);
  for (auto ctx : {c1(), c2(), c3()}) {
    const Field& f = ctx->field();
    for (int t = 0; t < 8; ++t) {
      AModule m = random_module(ctx, rng), n = random_module(ctx, rng);
      auto vm = rank_variety(m), vn = rank_variety(n);
      CHECK(vm.empty() == is_projective(m));
      CHECK(rank_variety(direct_sum(m, n)).points == unite(f, vm.points, vn.points));
      for (int i = -2; i <= 2; ++i) CHECK(rank_variety(omega_power(m, i)).points == vm.points);
      // 0 -> U -> M -> M/U -> 0
      AModule mw = to_weight_basis(m);
      if (mw.dim() == 0) continue;
      auto w = mw.weights();
      Vec gen(mw.dim());
      std::size_t pick = rng() % mw.dim();
      for (std::size_t k = 0; k < mw.dim(); ++k)
        if (w[k] == w[pick]) gen[k] = random_elem(f, rng);
      auto sq = generated_submodule(mw, {gen});
      auto a = rank_variety(sq.sub).points, b = vm.points, c = rank_variety(sq.quotient).points;
      CHECK(subset(a, unite(f, b, c)));
      CHECK(subset(b, unite(f, a, c)));
      CHECK(subset(c, unite(f, a, b)));
      // the Psi-closure over F_{Q^ell} contains the rational Psi-image
      if (ctx->m() == 2) {
        auto ext = root_extension(*ctx);
        CHECK(subset(psi_image(*ctx, vm.points), psi_closure(m, ext)));
      }
    }
  }
}

TEST_CASE("root extension") {
  for (auto ctx : {c1(), c2()}) {
    auto ext = root_extension(*ctx);
    const Field& big = ext.big->field();
    CHECK(big.order() == ctx->field().order() * (ctx->ell() == 2 ? 5u : 49u));
    for (std::uint32_t c = 0; c < ctx->field().order(); ++c)
      CHECK(big.pow(ext.root[c], ctx->ell()) == ext.embed[c]);
    CHECK(ext.big->field_ctx().q == ext.embed[ctx->field_ctx().q.code]);
    AModule k = extend_scalars(trivial_module(ctx), ext);
    k.validate();
    AModule v = extend_scalars(v_module(ctx, testing_support::ints(ctx->field(), {1, 1}), false), ext);
    v.validate();
  }
}
