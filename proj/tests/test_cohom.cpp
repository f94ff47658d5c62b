#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "common.hpp"
#include "qea/cohom.hpp"
#include "qea/error.hpp"

using namespace qea;
using testing_support::algebra;
using testing_support::c1;
using testing_support::c2;
using testing_support::c3;
using testing_support::ints;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool subset(const std::vector<Point>& a, const std::vector<Point>& b) {
  for (auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

std::vector<Point> where_zero(const Field& f, std::uint32_t m, const std::vector<Poly>& polys) {
  std::vector<Point> out;
  for (auto& pt : rational_points(f, m)) {
    bool z = true;
    for (auto& p : polys) z = z && !evaluate(f, p, pt).code;
    if (z) out.push_back(pt);
  }
  return out;
}

std::vector<Point> intersect(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  for (auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("polynomials") {
  auto f = Field::create(7, 1);
  Poly p = parse_poly(*f, 2, "y1^2 + 3*y1*y2 - y2^2");
  CHECK(p.degree() == 2);
  CHECK(p.terms.size() == 3);
  CHECK(evaluate(*f, p, ints(*f, {1, 1})) == f->from_int(3));
  CHECK(format_poly(*f, p) == "y1^2 + 3*y1*y2 + 6*y2^2");
  CHECK(format_poly(*f, parse_poly(*f, 2, format_poly(*f, p))) == format_poly(*f, p));
  CHECK(parse_poly(*f, 2, "y1 - y1").is_zero());
  CHECK(parse_poly(*f, 3, "2").degree() == 0);
  CHECK_THROWS_AS(parse_poly(*f, 2, "y1 + y2^2"), Error);
  CHECK_THROWS_AS(parse_poly(*f, 2, "y3"), Error);
  CHECK_THROWS_AS(parse_poly(*f, 2, "y1 y2"), Error);
  CHECK_THROWS_AS(parse_poly(*f, 2, ""), Error);
  auto mons = monomials(3, 2);
  CHECK(mons.size() == 6);
  CHECK(mons.front() == Exponent{2, 0, 0});
  CHECK(mons.back() == Exponent{0, 0, 2});
  for (std::uint32_t m = 1; m <= 3; ++m)
    for (std::uint32_t d = 0; d <= 4; ++d) CHECK(monomials(m, d).size() == binomial(d + m - 1, m - 1));
}

TEST_CASE("generators restrict to coordinates") {
  for (auto ctx : {c1(), c2(), c3(), algebra(3, 1, 7)}) {
    auto ring = CohomologyRing::build(ctx, 6);
    const Field& f = ctx->field();
    const std::uint32_t m = ctx->m(), l = ctx->ell();
    for (auto& pt : rational_points(f, m)) {
      for (std::uint32_t i = 0; i < m; ++i) {
        Exponent e(m, 0);
        e[i] = 1;
        Cocycle y = ring->monomial(e);
        CHECK(ring->restrict_class(y, pt) == f.pow(pt[i], l));
        // o_i = q^a pt_i up to a common scalar, and q^ell = 1
        for (auto& o : orbit_of(*ctx, pt)) CHECK(ring->restrict_class(y, o) == ring->restrict_class(y, pt));
      }
    }
  }
}

TEST_CASE("restriction of polynomials") {
  Rng rng(5);
  for (auto ctx : {c1(), c2(), c3()}) {
    auto ring = CohomologyRing::build(ctx, 6);
    const Field& f = ctx->field();
    const std::uint32_t m = ctx->m();
    for (std::uint32_t d = 1; d <= 3; ++d)
      for (int t = 0; t < 3; ++t) {
        Poly p;
        p.vars = m;
        for (auto& e : monomials(m, d)) {
          FieldElem c = random_elem(f, rng);
          if (c.code) p.terms[e] = c;
        }
        if (p.is_zero()) continue;
        Cocycle z = ring->cocycle(p);
        CHECK(z.degree == 2 * d);
        for (auto& pt : rational_points(f, m)) {
          Point lifted(m);
          for (std::uint32_t i = 0; i < m; ++i) lifted[i] = f.pow(pt[i], ctx->ell());
          FieldElem c = ring->restrict_class(z, pt);
          CHECK(c == evaluate(f, p, lifted));
          for (auto& o : orbit_of(*ctx, pt)) CHECK(ring->restrict_class(z, o) == c);
        }
      }
  }
}

TEST_CASE("cohomology of k") {
  for (auto ctx : {c1(), c2(), c3()}) {
    auto ring = CohomologyRing::build(ctx, 8);
    const Field& f = ctx->field();
    const std::uint32_t m = ctx->m();
    GradedHModule h = h_module(*ring, trivial_module(ctx), 8);
    for (std::size_t n = 0; n <= 8; ++n) CHECK(h.dims[n] == (n % 2 ? 0 : binomial(n / 2 + m - 1, m - 1)));
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::size_t n = 0; n + 2 <= 8; n += 2) CHECK(linalg::rank(f, h.actions[i][n]) == h.dims[n]);
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j)
        for (std::size_t n = 0; n + 4 <= 8; ++n)
          CHECK(linalg::multiply(f, h.actions[i][n + 2], h.actions[j][n]) ==
                linalg::multiply(f, h.actions[j][n + 2], h.actions[i][n]));
    for (std::uint32_t d = 0; d <= 3; ++d) CHECK(annihilator(*ring, h, d, 8).empty());
  }
}

TEST_CASE("one variable: simples") {
  auto ctx = algebra(3, 1, 7);
  auto ring = CohomologyRing::build(ctx, 6);
  for (Packed i = 0; i < 3; ++i) {
    auto h = h_module(*ring, simple_module(ctx, i), 6);
    for (std::size_t n = 0; n <= 6; ++n) {
      std::size_t expected = (n % 2 == 0 && i == 0) || (n % 2 == 1 && i == 1) ? 1 : 0;
      CHECK(h.dims[n] == expected);
    }
  }
}

TEST_CASE("ext into V(lambda) and the regular module") {
  for (auto ctx : {c1(), c2()}) {
    auto ring = CohomologyRing::build(ctx, 6);
    const Field& f = ctx->field();
    auto hr = h_module(*ring, regular_module(ctx), 6);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(hr.dims[n] == 0);
    for (auto& lam : {ints(f, {1, 0}), ints(f, {1, 1}), ints(f, {0, 1})}) {
      AModule v = v_module(ctx, lam, false);
      for (std::size_t n = 0; n <= 6; ++n) {
        bool some = false;
        for (Packed chi = 0; chi < ctx->lambda_dim(); ++chi) {
          auto h = h_module(*ring, twist(v, ctx->weight_neg(chi)), 6);
          some = some || h.dims[n] > 0;
        }
        CHECK(some);
      }
    }
  }
}

TEST_CASE("support varieties of basic modules") {
  for (auto ctx : {c1(), c2()}) {
    auto ring = CohomologyRing::build(ctx, 8);
    const Field& f = ctx->field();
    auto all = rational_points(f, ctx->m());
    auto sk = support_variety(*ring, trivial_module(ctx), 8, 3);
    CHECK(sk.points == all);
    CHECK(sk.stabilized);
    // P_n has n + 1 summands when m = 2
    for (std::size_t n = 0; n <= 8; ++n) CHECK(sk.betti[n] == n + 1);
    auto sr = support_variety(*ring, regular_module(ctx), 8, 3);
    CHECK(sr.points.empty());
    CHECK(sr.betti[0] == ctx->lambda_dim());
    for (auto& lam : rational_points(f, ctx->m())) {
      auto sv = support_variety(*ring, v_module(ctx, lam, false), 8, 3);
      CHECK(sv.points == std::vector<Point>{psi(*ctx, lam)});
      CHECK(sv.stabilized);
    }
  }
}

TEST_CASE("carlson modules") {
  for (auto ctx : {c1(), c2()}) {
    auto ring = CohomologyRing::build(ctx, 8);
    const Field& f = ctx->field();
    const std::size_t omega2 = omega_power(trivial_module(ctx), 2).dim();
    Poly y1 = parse_poly(f, 2, "y1"), y2 = parse_poly(f, 2, "y2"), s = parse_poly(f, 2, "y1 + y2");
    AModule l1 = carlson_module(*ring, ring->cocycle(y1));
    l1.validate();
    CHECK(l1.dim() == omega2 - 1);
    CHECK(support_variety(*ring, l1, 8, 3).points == where_zero(f, 2, {y1}));
    AModule l2 = carlson_module(*ring, ring->cocycle(y2));
    AModule ls = carlson_module(*ring, ring->cocycle(s));
    CHECK(support_variety(*ring, ls, 8, 3).points == where_zero(f, 2, {s}));
    CHECK(support_variety(*ring, tensor(l1, l2), 8, 3).points.empty());
    Poly q = parse_poly(f, 2, "y1*y2");
    AModule lq = carlson_module(*ring, ring->cocycle(q));
    CHECK(lq.dim() == omega_power(trivial_module(ctx), 4).dim() - 1);
    CHECK(support_variety(*ring, lq, 8, 3).points == where_zero(f, 2, {q}));
    CHECK_THROWS_AS(carlson_module(*ring, ring->cocycle(parse_poly(f, 2, "y1 - y1 + 0*y2"))), Error);
    Cocycle odd;
    odd.degree = 1;
    odd.values = Vec(ring->resolution().term(1).summands(), f.one());
    CHECK_THROWS_AS(carlson_module(*ring, odd), Error);
  }
  auto ctx = c3();
  auto ring = CohomologyRing::build(ctx, 6);
  const Field& f = ctx->field();
  AModule l1 = carlson_module(*ring, ring->cocycle(parse_poly(f, 3, "y1")));
  AModule l2 = carlson_module(*ring, ring->cocycle(parse_poly(f, 3, "y2")));
  CHECK(support_variety(*ring, tensor(l1, l2), 6, 2).points == std::vector<Point>{ints(f, {0, 0, 1})});
}

TEST_CASE("zero cocycle") {
  auto ctx = c1();
  auto ring = CohomologyRing::build(ctx, 4);
  Cocycle z;
  z.degree = 2;
  z.values = Vec(ring->resolution().term(2).summands());
  try {
    carlson_module(*ring, z);
    FAIL("expected ZeroCocycle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroCocycle);
  }
}

TEST_CASE("rank and support varieties agree on random modules") {
  Rng rng(2024);
  for (auto ctx : {c1(), c2()}) {
    auto ring = CohomologyRing::build(ctx, 8);
    const Field& f = ctx->field();
    AModule l1 = carlson_module(*ring, ring->cocycle(parse_poly(f, 2, "y1")));
    auto ext = root_extension(*ctx);
    for (int t = 0; t < 6; ++t) {
      AModule m = random_module(ctx, rng);
      auto sv = support_variety(*ring, m, 8, 3);
      auto rv = rank_variety(m).points;
      // rational points only see part of the image; the closure sees all of it
      CHECK(subset(psi_image(*ctx, rv), sv.points));
      CHECK(sv.points == psi_closure(m, ext));
      // cutting down by a hyperplane
      auto cut = support_variety(*ring, tensor(m, l1), 8, 3);
      CHECK(cut.points == intersect(sv.points, where_zero(f, 2, {parse_poly(f, 2, "y1")})));
    }
  }
}
