#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "qea/error.hpp"
#include "qea/resolution.hpp"

using namespace qea;
using testing_support::algebra;
using testing_support::brute_hom_dim;
using testing_support::c1;
using testing_support::c2;
using testing_support::c3;

TEST_CASE("betti numbers of the trivial module") {
  // Ext^{2n}(k, k) = polynomials of degree n in m variables, odd degrees vanish
  for (auto ctx : {c1(), c2(), c3(), algebra(3, 1, 7)}) {
    auto d = ext_dims(trivial_module(ctx), trivial_module(ctx), 8);
    const std::size_t m = ctx->m();
    for (std::size_t n = 0; n <= 8; ++n) {
      std::size_t expected = 0;
      if (n % 2 == 0) {
        // binomial(n/2 + m - 1, m - 1)
        expected = 1;
        for (std::size_t i = 1; i < m; ++i) expected = expected * (n / 2 + i) / i;
      }
      CHECK_MESSAGE(d[n] == expected, "m=" << m << " n=" << n);
    }
  }
}

TEST_CASE("one variable: simples") {
  // P_{2k} = A e_a, P_{2k+1} = A e_{a+1}
  for (auto ctx : {algebra(2, 1, 5), algebra(3, 1, 7), algebra(5, 1, 11)}) {
    const std::uint32_t l = ctx->ell();
    for (Packed a = 0; a < l; ++a) {
      Resolution res = minimal_resolution(simple_module(ctx, a), 6);
      for (std::size_t n = 0; n <= 6; ++n) {
        REQUIRE(res.term(n).summands() == 1);
        CHECK(res.term(n).top(0) == (n % 2 ? (a + 1) % l : a));
      }
      for (Packed b = 0; b < l; ++b) {
        auto d = ext_dims(simple_module(ctx, a), simple_module(ctx, b), 5);
        for (std::size_t n = 0; n <= 5; ++n) CHECK(d[n] == (b == (n % 2 ? (a + 1) % l : a) ? 1u : 0u));
      }
    }
  }
}

TEST_CASE("resolution of a projective stops") {
  auto ctx = c1();
  Resolution res = minimal_resolution(regular_module(ctx), 3);
  CHECK(res.term(0).summands() == ctx->lambda_dim());
  for (std::size_t n = 1; n <= 3; ++n) CHECK(res.term(n).dim() == 0);
}

TEST_CASE("ext of random modules") {
  Rng rng(11);
  for (auto ctx : {c1(), c2(), c3()}) {
    for (int t = 0; t < 4; ++t) {
      AModule m = random_module(ctx, rng), n = random_module(ctx, rng);
      if (m.dim() == 0 || n.dim() == 0) continue;
      Resolution res = minimal_resolution(m, 5);
      verify_resolution(res);
      // betti numbers of M count the generators of each P_n
      auto dk = ext_dims(m, direct_sum(trivial_module(ctx), trivial_module(ctx)), 0);
      CHECK(dk[0] == 2 * brute_hom_dim(m, trivial_module(ctx)));
      auto d = ext_dims(m, n, 4);
      CHECK(d[0] == brute_hom_dim(m, n));
      // dimension shifting, valid from degree 2 on
      auto ds = ext_dims(omega(m), n, 3);
      for (std::size_t k = 2; k <= 4; ++k) CHECK(d[k] == ds[k - 1]);
    }
  }
}

TEST_CASE("budget") {
  auto ctx = c2();
  CHECK_THROWS_AS(minimal_resolution(trivial_module(ctx), 10, 50), Error);
  try {
    minimal_resolution(trivial_module(ctx), 10, 50);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceBudgetExceeded);
  }
}

TEST_CASE("assembled resolutions are checked") {
  auto ctx = c1();
  Resolution res = minimal_resolution(trivial_module(ctx), 3);
  std::vector<std::vector<Packed>> tops;
  std::vector<std::vector<Vec>> images;
  for (std::size_t n = 0; n <= 3; ++n) {
    tops.push_back(res.term(n).tops());
    images.push_back(n == 0 ? std::vector<Vec>{Vec{ctx->field().one()}} : res.differentials[n].images());
  }
  CHECK_NOTHROW(verify_resolution(assemble_resolution(res.target, tops, images)));
  images[2][0] = Vec(images[2][0].size());
  CHECK_THROWS_AS(verify_resolution(assemble_resolution(res.target, tops, images)), Error);
}
