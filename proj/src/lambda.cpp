#include "qea/lambda.hpp"

#include "qea/error.hpp"

namespace qea {

namespace {

void same_ctx(const LambdaModule& a, const LambdaModule& b) {
  if (a.ctx_ptr() != b.ctx_ptr()) throw Error(ErrorCode::ContextMismatch, "modules use different algebras");
}

// X^c on M for every monomial c.
std::vector<Matrix> monomial_actions(const LambdaModule& m) {
  const AlgebraCtx& ctx = m.ctx();
  const Field& f = ctx.field();
  std::vector<Matrix> out(ctx.lambda_dim());
  out[0] = Matrix::identity(f, m.dim());
  for (Packed c = 1; c < ctx.lambda_dim(); ++c) {
    std::uint32_t i = 0;
    while (ctx.digit(c, i) == 0) ++i;
    out[c] = linalg::multiply(f, m.x(i), out[c - ctx.unit(i)]);
  }
  return out;
}

}  // namespace

LambdaModule lambda_trivial(std::shared_ptr<const AlgebraCtx> ctx) {
  std::vector<Matrix> x(ctx->m(), Matrix(1, 1));
  return LambdaModule(std::move(ctx), std::move(x));
}

LambdaModule lambda_regular(std::shared_ptr<const AlgebraCtx> ctx) {
  const std::size_t n = ctx->lambda_dim();
  std::vector<Matrix> x;
  for (std::uint32_t i = 0; i < ctx->m(); ++i) {
    Matrix a(n, n);
    for (Packed c = 0; c < n; ++c)
      if (auto t = ctx->mono_mul(ctx->unit(i), c)) a(*t, c) = ctx->field().one();
    x.push_back(std::move(a));
  }
  return LambdaModule(std::move(ctx), std::move(x));
}

LambdaModule lambda_direct_sum(const LambdaModule& a, const LambdaModule& b) {
  same_ctx(a, b);
  std::vector<Matrix> x;
  const std::size_t da = a.dim(), db = b.dim();
  for (std::uint32_t i = 0; i < a.ctx().m(); ++i) {
    Matrix s(da + db, da + db);
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) s(r, c) = a.x(i)(r, c);
    for (std::size_t r = 0; r < db; ++r)
      for (std::size_t c = 0; c < db; ++c) s(da + r, da + c) = b.x(i)(r, c);
    x.push_back(std::move(s));
  }
  return LambdaModule(a.ctx_ptr(), std::move(x));
}

LambdaModule lambda_quotient(const LambdaModule& m, const std::vector<Vec>& generators) {
  const AlgebraCtx& ctx = m.ctx();
  const Field& f = ctx.field();
  auto mono = monomial_actions(m);
  linalg::Subspace u(f, m.dim());
  for (auto& g : generators) {
    if (g.size() != m.dim()) throw Error(ErrorCode::InvalidArgument, "generator has wrong length");
    for (auto& a : mono) u.insert(linalg::apply(f, a, g));
  }
  std::vector<bool> piv(m.dim(), false);
  for (auto p : u.pivots()) piv[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < m.dim(); ++k)
    if (!piv[k]) keep.push_back(k);
  std::vector<Matrix> x;
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    Matrix q(keep.size(), keep.size());
    for (std::size_t t = 0; t < keep.size(); ++t) {
      Vec img = u.reduce(m.x(i).col_vec(keep[t]));
      for (std::size_t s = 0; s < keep.size(); ++s) q(s, t) = img[keep[s]];
    }
    x.push_back(std::move(q));
  }
  return LambdaModule(m.ctx_ptr(), std::move(x));
}

LambdaModule random_lambda_module(std::shared_ptr<const AlgebraCtx> ctx, Rng& rng) {
  const Field& f = ctx->field();
  LambdaModule free = lambda_regular(ctx);
  if (rng() % 2) free = lambda_direct_sum(free, lambda_regular(ctx));
  std::vector<Vec> gens;
  const std::size_t count = rng() % 3;
  for (std::size_t k = 0; k < count; ++k) {
    Vec v(free.dim());
    // sparse vectors keep the quotients from collapsing
    for (std::size_t t = 0; t < 2; ++t) v[rng() % free.dim()] = random_elem(f, rng);
    gens.push_back(std::move(v));
  }
  return lambda_quotient(free, gens);
}

std::vector<Matrix> lambda_hom_space(const LambdaModule& m, const LambdaModule& n) {
  same_ctx(m, n);
  const Field& f = m.ctx().field();
  const std::size_t dm = m.dim(), dn = n.dim();
  // T X^M = X^N T with T stored row-major
  Matrix sys(0, dm * dn);
  for (std::uint32_t i = 0; i < m.ctx().m(); ++i)
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        Vec row(dm * dn);
        for (std::size_t k = 0; k < dm; ++k) row[r * dm + k] = f.add(row[r * dm + k], m.x(i)(k, c));
        for (std::size_t k = 0; k < dn; ++k) row[k * dm + c] = f.sub(row[k * dm + c], n.x(i)(r, k));
        if (!linalg::is_zero_vec(row)) sys.append_row(row);
      }
  Matrix null = linalg::nullspace(f, sys);
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < null.rows(); ++b) {
    Matrix t(dn, dm);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) t(r, c) = null(b, r * dm + c);
    out.push_back(std::move(t));
  }
  return out;
}

std::size_t projective_hom_rank(const LambdaModule& m, const LambdaModule& n) {
  same_ctx(m, n);
  const AlgebraCtx& ctx = m.ctx();
  const Field& f = ctx.field();
  const std::size_t dm = m.dim(), dn = n.dim(), L = ctx.lambda_dim();
  auto am = monomial_actions(m), an = monomial_actions(n);
  // A map M -> Lambda is x -> sum_c phi(X^{top-c} x) X^c for a functional phi;
  // follow it by 1 -> v_j. With phi = e_k this gives
  // T(r, s) = sum_c (X^c)_N(r, j) (X^{top-c})_M(k, s).
  linalg::Subspace span(f, dm * dn);
  for (std::size_t k = 0; k < dm; ++k)
    for (std::size_t j = 0; j < dn; ++j) {
      Vec t(dm * dn);
      for (Packed c = 0; c < L; ++c) {
        const Matrix& xn = an[c];
        const Matrix& xm = am[L - 1 - c];
        for (std::size_t r = 0; r < dn; ++r) {
          FieldElem a = xn(r, j);
          if (!a.code) continue;
          for (std::size_t s = 0; s < dm; ++s)
            if (xm(k, s).code) t[r * dm + s] = f.add(t[r * dm + s], f.mul(a, xm(k, s)));
        }
      }
      span.insert(t);
    }
  return span.dim();
}

OrbitVariety lambda_rank_variety(const LambdaModule& m) {
  m.validate();
  return rank_variety(induce_from_lambda(m.ctx_ptr(), m));
}

bool stable_hom_criterion(const LambdaModule& m, std::span<const FieldElem> lambda) {
  if (linalg::is_zero_vec(lambda)) throw Error(ErrorCode::ZeroPoint, "the zero vector is not a projective point");
  LambdaModule v = restrict_to_lambda(v_module(m.ctx_ptr(), lambda, false));
  return lambda_hom_space(v, m).size() > projective_hom_rank(v, m);
}

SupportVariety lambda_support_variety(const CohomologyRing& ring, const LambdaModule& m, std::size_t n_max,
                                      std::uint32_t d_max) {
  m.validate();
  if (m.ctx_ptr() != ring.ctx_ptr()) throw Error(ErrorCode::ContextMismatch, "module uses a different algebra");
  if (n_max < 2 || d_max < 1) throw Error(ErrorCode::InvalidArgument, "need n_max >= 2 and d_max >= 1");
  const Field& f = ring.ctx().field();
  // twisting an induced module by a character gives it back, so one simple suffices
  ProjectiveSplit split = split_projective(induce_from_lambda(m.ctx_ptr(), m));
  SupportVariety out;
  out.betti.assign(n_max + 1, 0);
  out.betti[0] = split.projective_tops.size();
  if (split.stable.dim() == 0) {
    out.stabilized = true;
    return out;
  }
  GradedHModule h = h_module(ring, split.stable, n_max);
  for (std::size_t n = 0; n <= n_max; ++n) out.betti[n] += h.dims[n];
  out.points = annihilator_zeros(ring, h, n_max, d_max);
  auto coarse = annihilator_zeros(ring, h, n_max - 2, d_max - 1);
  sort_points(f, out.points);
  sort_points(f, coarse);
  out.stabilized = out.points == coarse;
  return out;
}

std::vector<std::size_t> hochschild_m1_dims(const Field& f, std::uint32_t ell, std::size_t n_max) {
  if (ell < 2) throw Error(ErrorCode::InvalidArgument, "ell must be at least 2");
  // enveloping algebra k[t, s]/(t^ell, s^ell), basis t^a s^b at a * ell + b
  const std::size_t e = static_cast<std::size_t>(ell) * ell;
  auto mult = [&](const Vec& z) {
    Matrix out(e, e);
    for (std::size_t x = 0; x < e; ++x) {
      if (!z[x].code) continue;
      const std::size_t a = x / ell, b = x % ell;
      for (std::size_t y = 0; y < e; ++y) {
        const std::size_t c = a + y / ell, d = b + y % ell;
        if (c < ell && d < ell) out(c * ell + d, y) = f.add(out(c * ell + d, y), z[x]);
      }
    }
    return out;
  };
  // the element acting on the bimodule k[t]/(t^ell): t^a s^b -> multiplication by t^{a+b}
  auto on_lambda = [&](const Vec& z) {
    Matrix out(ell, ell);
    for (std::size_t x = 0; x < e; ++x) {
      if (!z[x].code) continue;
      const std::size_t sh = x / ell + x % ell;
      for (std::size_t y = 0; y + sh < ell; ++y) out(y + sh, y) = f.add(out(y + sh, y), z[x]);
    }
    return out;
  };
  Vec u(e), v(e);
  u[1 * ell + 0] = f.one();
  u[0 * ell + 1] = f.neg(f.one());
  for (std::size_t i = 0; i < ell; ++i) v[(ell - 1 - i) * ell + i] = f.one();
  Matrix mu = mult(u), mv = mult(v);
  Matrix aug(ell, e);
  for (std::size_t x = 0; x < e; ++x)
    if (x / ell + x % ell < ell) aug(x / ell + x % ell, x) = f.one();
  const std::size_t ru = linalg::rank(f, mu), rv = linalg::rank(f, mv), ra = linalg::rank(f, aug);
  if (!linalg::multiply(f, mu, mv).is_zero() || !linalg::multiply(f, aug, mu).is_zero() || ra + ru != e ||
      ru + rv != e)
    throw Error(ErrorCode::InvariantViolation, "the periodic bimodule resolution is not exact");
  // Hom(P_n, Lambda) = Lambda, with coboundary the action of d_{n+1}: u for n even, v for n odd
  Matrix cu = on_lambda(u), cv = on_lambda(v);
  std::vector<std::size_t> dims;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Matrix& out = n % 2 == 0 ? cu : cv;
    std::size_t kernel = ell - linalg::rank(f, out);
    std::size_t image = n == 0 ? 0 : linalg::rank(f, n % 2 == 0 ? cv : cu);
    dims.push_back(kernel - image);
  }
  return dims;
}

}  // namespace qea
