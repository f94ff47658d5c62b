#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qea/error.hpp"
#include "qea/field.hpp"

using namespace qea;

namespace {

// Naive polynomial product mod (modulus, p), used as an independent oracle.
std::vector<std::uint32_t> naive_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                     const std::vector<std::uint32_t>& mod, std::uint32_t p) {
  std::size_t r = a.size();
  std::vector<std::uint64_t> prod(2 * r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = 2 * r - 1; d-- > r;) {
    std::uint64_t c = prod[d];
    if (!c) continue;
    for (std::size_t k = 0; k <= r; ++k) prod[d - r + k] = (prod[d - r + k] + (p - c) * mod[k]) % p;
  }
  std::vector<std::uint32_t> out(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

std::uint32_t brute_order(std::uint32_t x, std::uint32_t p) {
  std::uint32_t acc = x, d = 1;
  while (acc != 1) {
    acc = acc * x % p;
    ++d;
  }
  return d;
}

}  // namespace

TEST_CASE("canonical root of unity in prime fields") {
  CHECK(make_field(3, 1, 2).q.code == 2);
  // smallest residue of multiplicative order 3 mod 7, found by brute force
  std::uint32_t expected = 0;
  for (std::uint32_t x = 2; x < 7 && !expected; ++x)
    if (brute_order(x, 7) == 3) expected = x;
  CHECK(expected == 2);
  CHECK(make_field(7, 1, 3).q.code == expected);
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    std::uint32_t ell = 2;
    auto ctx = make_field(p, 1, ell);
    CHECK(ctx.q.code == p - 1);
  }
}

TEST_CASE("field construction errors") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code_of([] { make_field(5, 1, 3); }) == ErrorCode::NoRootOfUnity);
  CHECK(code_of([] { make_field(4, 1, 3); }) == ErrorCode::NonPrimeModulus);
  CHECK(code_of([] { make_field(3, 1, 3); }) == ErrorCode::CharDividesEll);
}

TEST_CASE("prime field arithmetic") {
  auto f = Field::create(7, 1);
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::uint32_t b = 0; b < 7; ++b) {
      CHECK(f->add({a}, {b}).code == (a + b) % 7);
      CHECK(f->mul({a}, {b}).code == (a * b) % 7);
      CHECK(f->sub({a}, {b}).code == (a + 7 - b) % 7);
    }
  for (std::uint32_t a = 1; a < 7; ++a) CHECK(f->mul({a}, f->inv({a})) == f->one());
  auto big = Field::create(65521, 1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    std::uint64_t a = rng() % 65521, b = rng() % 65521;
    CHECK(big->mul({static_cast<std::uint32_t>(a)}, {static_cast<std::uint32_t>(b)}).code == a * b % 65521);
  }
}

TEST_CASE("extension fields agree with naive polynomial arithmetic") {
  for (auto [p, r] : {std::pair{5u, 2u}, std::pair{7u, 3u}, std::pair{2u, 4u}, std::pair{3u, 2u}}) {
    auto f = Field::create(p, r);
    const auto& mod = f->modulus();
    REQUIRE(mod.size() == r + 1);
    CHECK(mod.back() == 1);
    // irreducible: no roots, and for r = 4 no quadratic factor shows up as a zero divisor
    std::mt19937_64 rng(p * 100 + r);
    for (int t = 0; t < 300; ++t) {
      FieldElem a{static_cast<std::uint32_t>(rng() % f->order())};
      FieldElem b{static_cast<std::uint32_t>(rng() % f->order())};
      auto expected = naive_mul(f->coeffs(a), f->coeffs(b), mod, p);
      CHECK(f->coeffs(f->mul(a, b)) == expected);
      if (a.code) CHECK(f->mul(a, f->inv(a)) == f->one());
      // Frobenius
      CHECK(f->pow(f->add(a, b), p) == f->add(f->pow(a, p), f->pow(b, p)));
    }
    for (std::uint32_t c = 1; c < f->order(); ++c)
      for (std::uint32_t d = 1; d < f->order(); d += 7) CHECK(f->mul({c}, {d}).code != 0);
  }
}

TEST_CASE("q is the least element of order ell in canonical order") {
  for (auto [p, r, ell] : {std::tuple{5u, 2u, 3u}, std::tuple{7u, 1u, 3u}, std::tuple{5u, 2u, 4u}, std::tuple{7u, 3u, 9u}}) {
    auto ctx = make_field(p, r, ell);
    const Field& f = *ctx.field;
    CHECK(f.pow(ctx.q, ell) == f.one());
    std::vector<std::uint32_t> seen;
    FieldElem cur = f.one();
    for (std::uint32_t k = 0; k < ell; ++k) {
      seen.push_back(cur.code);
      cur = f.mul(cur, ctx.q);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
    for (std::uint32_t c = 1; c < f.order(); ++c) {
      FieldElem x{c};
      if (f.multiplicative_order(x) == ell) CHECK_FALSE(f.canonical_less(x, ctx.q));
    }
  }
}

TEST_CASE("subfield embedding is a ring map") {
  auto small = Field::create(7, 1);
  auto big = Field::create(7, 3);
  auto emb = small->embedding_into(*big);
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::uint32_t b = 0; b < 7; ++b) {
      CHECK(emb[small->add({a}, {b}).code] == big->add(emb[a], emb[b]));
      CHECK(emb[small->mul({a}, {b}).code] == big->mul(emb[a], emb[b]));
    }
  auto s2 = Field::create(5, 2);
  auto b4 = Field::create(5, 4);
  auto e2 = s2->embedding_into(*b4);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    FieldElem a{static_cast<std::uint32_t>(rng() % 25)}, b{static_cast<std::uint32_t>(rng() % 25)};
    CHECK(e2[s2->mul(a, b).code] == b4->mul(e2[a.code], e2[b.code]));
    CHECK(e2[s2->add(a, b).code] == b4->add(e2[a.code], e2[b.code]));
  }
}
