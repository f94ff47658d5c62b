#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qea/matrix.hpp"
#include "qea/module.hpp"

using namespace qea;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng, int zero_bias = 0) {
  Matrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (zero_bias == 0 || rng() % zero_bias != 0) a(i, j) = random_elem(f, rng);
  return a;
}

// Dimension of the row space from the number of distinct combinations of the
// rows. Only usable for tiny fields and few rows.
std::size_t brute_rank(const Field& f, const Matrix& a) {
  std::size_t q = f.order(), count = 0;
  std::size_t combos = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) combos *= q;
  std::vector<std::vector<std::uint32_t>> span;
  for (std::size_t code = 0; code < combos; ++code) {
    Vec v(a.cols());
    std::size_t rest = code;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      f.axpy(v, a.row(i), FieldElem{static_cast<std::uint32_t>(rest % q)});
      rest /= q;
    }
    std::vector<std::uint32_t> key;
    for (auto x : v) key.push_back(x.code);
    span.push_back(key);
  }
  std::sort(span.begin(), span.end());
  count = std::unique(span.begin(), span.end()) - span.begin();
  std::size_t r = 0;
  while (count > 1) {
    count /= q;
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rank matches exhaustive span size") {
  auto f = Field::create(3, 1);
  Rng rng(1);
  for (int t = 0; t < 40; ++t) {
    Matrix a = random_matrix(*f, 1 + rng() % 4, 1 + rng() % 5, rng, 2);
    CHECK(linalg::rank(*f, a) == brute_rank(*f, a));
  }
  auto f4 = Field::create(2, 2);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(*f4, 1 + rng() % 3, 1 + rng() % 4, rng, 2);
    CHECK(linalg::rank(*f4, a) == brute_rank(*f4, a));
  }
}

TEST_CASE("nullspace, inverse and solve") {
  for (auto [p, r] : {std::pair{7u, 1u}, std::pair{5u, 2u}}) {
    auto f = Field::create(p, r);
    Rng rng(p + r);
    for (int t = 0; t < 30; ++t) {
      std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
      Matrix a = random_matrix(*f, rows, cols, rng, 3);
      Matrix n = linalg::nullspace(*f, a);
      CHECK(n.rows() + linalg::rank(*f, a) == cols);
      for (std::size_t k = 0; k < n.rows(); ++k) CHECK(linalg::is_zero_vec(linalg::apply(*f, a, n.row(k))));
      Vec x = random_vec(*f, cols, rng);
      Vec b = linalg::apply(*f, a, x);
      auto sol = linalg::solve(*f, a, b);
      REQUIRE(sol);
      CHECK(linalg::apply(*f, a, *sol) == b);
      linalg::Solver s(*f, a);
      auto sol2 = s.solve(b);
      REQUIRE(sol2);
      CHECK(linalg::apply(*f, a, *sol2) == b);
      Matrix sq = random_matrix(*f, rows, rows, rng);
      if (linalg::rank(*f, sq) == rows)
        CHECK(linalg::multiply(*f, sq, linalg::inverse(*f, sq)) == Matrix::identity(*f, rows));
    }
    Matrix z(2, 2);
    z(0, 0) = f->one();
    Vec b{f->zero(), f->one()};
    CHECK_FALSE(linalg::solve(*f, z, b));
  }
}

TEST_CASE("rref is reduced and spans the row space") {
  auto f = Field::create(11, 1);
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(*f, 5, 7, rng, 2);
    auto e = linalg::rref(*f, a);
    for (std::size_t i = 0; i < e.rank(); ++i) {
      CHECK(e.rows(i, e.pivots[i]) == f->one());
      for (std::size_t k = 0; k < e.rank(); ++k)
        if (k != i) CHECK(e.rows(k, e.pivots[i]).code == 0);
    }
    linalg::Subspace s(*f, 7);
    for (std::size_t i = 0; i < a.rows(); ++i) s.insert(a.row(i));
    CHECK(s.dim() == e.rank());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      CHECK(s.contains(a.row(i)));
      Vec c = s.coords(a.row(i));
      Vec back(7);
      for (std::size_t k = 0; k < c.size(); ++k) f->axpy(back, s.basis()[k], c[k]);
      CHECK(back == a.row_vec(i));
    }
  }
}

TEST_CASE("quotient coordinates") {
  auto f = Field::create(5, 1);
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    // B inside Z inside F^8
    Matrix zb = random_matrix(*f, 5, 8, rng);
    Matrix b = linalg::multiply(*f, random_matrix(*f, 2, 5, rng), zb);
    linalg::QuotientSpace qs(*f, 8, b, zb);
    std::size_t rz = linalg::rank(*f, zb), rb = linalg::rank(*f, b);
    CHECK(qs.dim() == rz - rb);
    // a cycle plus a boundary has the same class
    Vec coeff = random_vec(*f, 5, rng);
    Vec z(8);
    for (std::size_t i = 0; i < 5; ++i) f->axpy(z, zb.row(i), coeff[i]);
    Vec zb2 = z;
    f->axpy(zb2, b.row(0), f->from_int(3));
    CHECK(qs.coords(z) == qs.coords(zb2));
    // representatives map to unit vectors
    for (std::size_t k = 0; k < qs.dim(); ++k) {
      Vec c = qs.coords(qs.representatives().row(k));
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j].code == (j == k ? 1u : 0u));
    }
  }
}
