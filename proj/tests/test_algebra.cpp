#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <tuple>

#include "common.hpp"
#include "qea/error.hpp"
#include "qea/matrix.hpp"

using namespace qea;
using testing_support::c1;
using testing_support::c2;
using testing_support::c3;

namespace {

// Left regular representation assembled from the one-variable algebra by
// Kronecker products; shares nothing with basis_product.
struct RegularOracle {
  std::shared_ptr<const AlgebraCtx> ctx;
  std::vector<Matrix> lx, lg;
  std::size_t n = 1;

  explicit RegularOracle(std::shared_ptr<const AlgebraCtx> c) : ctx(std::move(c)) {
    const Field& f = ctx->field();
    const std::uint32_t l = ctx->ell(), m = ctx->m();
    Matrix x1(l * l, l * l), g1(l * l, l * l);
    for (std::uint32_t a = 0; a < l; ++a)
      for (std::uint32_t b = 0; b < l; ++b) {
        if (a + 1 < l) x1(a + 1 + l * b, a + l * b) = f.one();
        g1(a + l * ((b + 1) % l), a + l * b) = f.pow(ctx->field_ctx().q, a);
      }
    for (std::uint32_t i = 0; i < m; ++i) n *= l * l;
    for (std::uint32_t i = 0; i < m; ++i) {
      Matrix accx = Matrix::identity(f, 1), accg = Matrix::identity(f, 1);
      for (std::uint32_t k = 0; k < m; ++k) {
        Matrix id = Matrix::identity(f, l * l);
        accx = linalg::kron(f, accx, k == i ? x1 : id);
        accg = linalg::kron(f, accg, k == i ? g1 : id);
      }
      lx.push_back(accx);
      lg.push_back(accg);
    }
  }

  std::size_t index(std::size_t basis) const {
    Packed a = ctx->basis_mono(basis), b = ctx->basis_group(basis);
    std::size_t idx = 0;
    for (std::uint32_t i = 0; i < ctx->m(); ++i)
      idx = idx * ctx->ell() * ctx->ell() + ctx->digit(a, i) + ctx->ell() * ctx->digit(b, i);
    return idx;
  }

  // L(X^a g^b) v, applying the rightmost factor first
  Vec left_apply(std::size_t basis, Vec v) const {
    const Field& f = ctx->field();
    Packed a = ctx->basis_mono(basis), b = ctx->basis_group(basis);
    for (std::uint32_t i = ctx->m(); i-- > 0;)
      for (std::uint32_t k = 0; k < ctx->digit(b, i); ++k) v = linalg::apply(f, lg[i], v);
    for (std::uint32_t i = ctx->m(); i-- > 0;)
      for (std::uint32_t k = 0; k < ctx->digit(a, i); ++k) v = linalg::apply(f, lx[i], v);
    return v;
  }

  Vec vec(const AlgElem& x) const {
    Vec v(n);
    for (auto& [k, c] : x.terms()) v[index(k)] = c;
    return v;
  }
};

using Triple = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, FieldElem>;

void add_to(const Field& f, Triple& t, std::size_t i, std::size_t j, std::size_t k, FieldElem c) {
  auto& slot = t[{i, j, k}];
  slot = f.add(slot, c);
  if (!slot.code) t.erase({i, j, k});
}

Triple delta_left(const AlgElem& x) {
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  Triple out;
  TensorElem dx = coproduct(x);
  for (auto& [ij, c] : dx.terms()) {
    TensorElem inner = coproduct(AlgElem::basis(ctx, ij.first, f.one()));
    for (auto& [kl, d] : inner.terms()) add_to(f, out, kl.first, kl.second, ij.second, f.mul(c, d));
  }
  return out;
}

Triple delta_right(const AlgElem& x) {
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  Triple out;
  TensorElem dx = coproduct(x);
  for (auto& [ij, c] : dx.terms()) {
    TensorElem inner = coproduct(AlgElem::basis(ctx, ij.second, f.one()));
    for (auto& [kl, d] : inner.terms()) add_to(f, out, ij.first, kl.first, kl.second, f.mul(c, d));
  }
  return out;
}

void check_hopf_axioms(const AlgElem& x) {
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  CHECK(delta_left(x) == delta_right(x));
  AlgElem left_counit(ctx), right_counit(ctx), s_left(ctx), s_right(ctx);
  TensorElem dx = coproduct(x);
  for (auto& [ij, c] : dx.terms()) {
    AlgElem bi = AlgElem::basis(ctx, ij.first, f.one()), bj = AlgElem::basis(ctx, ij.second, f.one());
    left_counit = add(left_counit, scale(f.mul(c, counit(bi)), bj));
    right_counit = add(right_counit, scale(f.mul(c, counit(bj)), bi));
    s_left = add(s_left, scale(c, multiply(antipode(bi), bj)));
    s_right = add(s_right, scale(c, multiply(bi, antipode(bj))));
  }
  CHECK(left_counit == x);
  CHECK(right_counit == x);
  AlgElem eps_one = scale(counit(x), one(ctx));
  CHECK(s_left == eps_one);
  CHECK(s_right == eps_one);
}

}  // namespace

TEST_CASE("multiplication examples") {
  for (auto ctx : {c1(), c2(), c3()}) {
    const Field& f = ctx->field();
    FieldElem q = ctx->field_ctx().q;
    CHECK(multiply(gen_g(*ctx, 0), gen_x(*ctx, 0)) == scale(q, multiply(gen_x(*ctx, 0), gen_g(*ctx, 0))));
    CHECK(multiply(gen_g(*ctx, 1), gen_x(*ctx, 0)) == multiply(gen_x(*ctx, 0), gen_g(*ctx, 1)));
    CHECK(multiply(power(gen_x(*ctx, 0), ctx->ell() - 1), gen_x(*ctx, 0)).is_zero());
    AlgElem y1 = multiply(gen_x(*ctx, 0), twist_elem(*ctx, 0));
    AlgElem y2 = multiply(gen_x(*ctx, 1), twist_elem(*ctx, 1));
    CHECK(multiply(y2, y1) == scale(q, multiply(y1, y2)));
    CHECK(power(gen_g(*ctx, 0), ctx->ell()) == one(*ctx));
    (void)f;
  }
}

TEST_CASE("multiplication matches the Kronecker regular representation") {
  for (auto ctx : {c1(), c2(), c3()}) {
    RegularOracle oracle(ctx);
    std::mt19937_64 rng(17);
    const Field& f = ctx->field();
    std::size_t pairs = ctx->dim() <= 16 ? ctx->dim() * ctx->dim() : 2000;
    for (std::size_t t = 0; t < pairs; ++t) {
      std::size_t i = ctx->dim() <= 16 ? t / ctx->dim() : rng() % ctx->dim();
      std::size_t j = ctx->dim() <= 16 ? t % ctx->dim() : rng() % ctx->dim();
      AlgElem u = AlgElem::basis(*ctx, i, f.one()), v = AlgElem::basis(*ctx, j, f.one());
      Vec expected = oracle.left_apply(i, oracle.vec(v));
      CHECK(oracle.vec(multiply(u, v)) == expected);
    }
  }
}

TEST_CASE("associativity") {
  auto ctx = c1();
  const Field& f = ctx->field();
  for (std::size_t i = 0; i < ctx->dim(); ++i)
    for (std::size_t j = 0; j < ctx->dim(); ++j)
      for (std::size_t k = 0; k < ctx->dim(); ++k) {
        AlgElem a = AlgElem::basis(*ctx, i, f.one()), b = AlgElem::basis(*ctx, j, f.one()),
                c = AlgElem::basis(*ctx, k, f.one());
        REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
      }
}

TEST_CASE("context mismatch is rejected") {
  auto a = c1(), b = c1();
  CHECK_THROWS_AS(multiply(gen_x(*a, 0), gen_x(*b, 0)), Error);
}

TEST_CASE("Hopf structure") {
  for (auto ctx : {c1(), c2()}) {
    const Field& f = ctx->field();
    TensorElem dg(*ctx);
    std::size_t g1 = ctx->basis_index(0, ctx->unit(0));
    dg.add_term(g1, g1, f.one());
    CHECK(coproduct(gen_g(*ctx, 0)) == dg);
    CHECK(antipode(gen_g(*ctx, 0)) == power(gen_g(*ctx, 0), ctx->ell() - 1));
    CHECK(counit(gen_x(*ctx, 0)) == f.zero());
    CHECK(counit(gen_g(*ctx, 1)) == f.one());
    TensorElem dx(*ctx);
    std::size_t x1 = ctx->basis_index(ctx->unit(0), 0);
    dx.add_term(x1, 0, f.one());
    dx.add_term(g1, x1, f.one());
    CHECK(coproduct(gen_x(*ctx, 0)) == dx);
    for (std::uint32_t i = 0; i < ctx->m(); ++i) {
      check_hopf_axioms(gen_x(*ctx, i));
      check_hopf_axioms(gen_g(*ctx, i));
    }
  }
  auto ctx = c1();
  const Field& f = ctx->field();
  for (std::size_t i = 0; i < ctx->dim(); ++i) {
    AlgElem b = AlgElem::basis(*ctx, i, f.one());
    check_hopf_axioms(b);
    for (std::size_t j = 0; j < ctx->dim(); ++j) {
      AlgElem c = AlgElem::basis(*ctx, j, f.one());
      CHECK(coproduct(multiply(b, c)) == tensor_multiply(coproduct(b), coproduct(c)));
      CHECK(antipode(multiply(b, c)) == multiply(antipode(c), antipode(b)));
    }
  }
}

TEST_CASE("tau") {
  auto ctx = c2();
  const Field& f = ctx->field();
  CHECK(tau(*ctx, testing_support::ints(f, {1, 0})) == gen_x(*ctx, 0));
  CHECK(tau(*ctx, testing_support::ints(f, {0, 1})) == multiply(gen_x(*ctx, 1), gen_g(*ctx, 0)));
  CHECK_THROWS_AS(tau(*ctx, testing_support::ints(f, {0, 0})), Error);
  for (auto c : {c1(), c2(), c3()}) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
      auto lam = random_point(c->field(), c->m(), rng);
      AlgElem tl = tau(*c, lam);
      CHECK_FALSE(power(tl, c->ell() - 1).is_zero());
      CHECK(power(tl, c->ell()).is_zero());
    }
  }
}

TEST_CASE("q-multinomials") {
  auto fc = make_field(7, 1, 3);
  const Field& f = *fc.field;
  std::vector<std::uint32_t> s11{1, 1}, s30{3, 0}, s111{1, 1, 1};
  CHECK(q_multinomial(fc, 2, s11) == f.add(f.one(), fc.q));
  CHECK(q_multinomial(fc, 3, s30) == f.one());
  CHECK(q_multinomial(fc, 3, s111) == f.zero());
  std::vector<std::uint32_t> s2{2};
  CHECK(q_multinomial(fc, 2, s2) == f.one());
  std::vector<std::uint32_t> s4{4};
  CHECK_THROWS_AS(q_multinomial(fc, 4, s4), Error);
}

TEST_CASE("powers of tau expand by q-multinomials") {
  for (auto ctx : {c2(), c3(), testing_support::algebra(4, 2, 5)}) {
    const Field& f = ctx->field();
    std::mt19937_64 rng(11);
    std::vector<AlgElem> y;
    for (std::uint32_t i = 0; i < ctx->m(); ++i) y.push_back(multiply(gen_x(*ctx, i), twist_elem(*ctx, i)));
    for (int t = 0; t < 5; ++t) {
      auto lam = random_point(f, ctx->m(), rng);
      AlgElem tl = tau(*ctx, lam);
      for (std::uint32_t n = 1; n < ctx->ell(); ++n) {
        AlgElem expected(*ctx);
        for (Packed s = 0; s < ctx->lambda_dim(); ++s) {
          if (ctx->total_degree(s) != n) continue;
          auto parts = ctx->digits(s);
          AlgElem term = scale(q_multinomial(ctx->field_ctx(), n, parts), one(*ctx));
          for (std::uint32_t i = 0; i < ctx->m(); ++i)
            term = multiply(term, scale(f.pow(lam[i], parts[i]), power(y[i], parts[i])));
          expected = add(expected, term);
        }
        CHECK(power(tl, n) == expected);
      }
    }
  }
}

TEST_CASE("idempotents") {
  auto small = testing_support::algebra(2, 1, 5);
  const Field& fs = small->field();
  AlgElem e0 = idempotent(*small, 0);
  AlgElem avg = scale(fs.inv(fs.from_int(2)), add(one(*small), gen_g(*small, 0)));
  CHECK(e0 == avg);
  for (auto ctx : {c1(), c2()}) {
    const Field& f = ctx->field();
    AlgElem total(*ctx);
    for (Packed chi = 0; chi < ctx->lambda_dim(); ++chi) {
      AlgElem e = idempotent(*ctx, chi);
      CHECK(multiply(e, e) == e);
      total = add(total, e);
      for (Packed psi = 0; psi < ctx->lambda_dim(); ++psi)
        if (psi != chi) CHECK(multiply(e, idempotent(*ctx, psi)).is_zero());
      // g_1 e_chi by expanding the group average term by term
      AlgElem expanded(*ctx);
      for (auto& [idx, c] : e.terms()) {
        Packed g = ctx->weight_add(ctx->basis_group(idx), ctx->unit(0));
        expanded.add_term(ctx->basis_index(0, g), c);
      }
      CHECK(multiply(gen_g(*ctx, 0), e) == expanded);
      CHECK(expanded == scale(ctx->q_pow(ctx->digit(chi, 0)), e));
    }
    CHECK(total == one(*ctx));
    (void)f;
  }
}
