#include "qea/algebra.hpp"

#include "qea/error.hpp"

namespace qea {

AlgebraCtx::AlgebraCtx(FieldCtx fctx, std::uint32_t m) : fctx_(std::move(fctx)), m_(m), lambda_dim_(1) {
  const std::uint32_t l = fctx_.ell;
  for (std::uint32_t i = 0; i < m; ++i) {
    radix_.push_back(static_cast<std::uint32_t>(lambda_dim_));
    lambda_dim_ *= l;
  }
  const Field& f = *fctx_.field;
  FieldElem cur = f.one();
  for (std::uint32_t e = 0; e < l; ++e) {
    q_powers_.push_back(cur);
    cur = f.mul(cur, fctx_.q);
  }
  const std::size_t n = lambda_dim_;
  add_.resize(n * n);
  mono_.resize(n * n);
  pair_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Packed sum = 0;
      bool overflow = false;
      std::uint32_t dot = 0;
      Packed mono = 0;
      for (std::uint32_t i = 0; i < m; ++i) {
        std::uint32_t da = digit(static_cast<Packed>(a), i), db = digit(static_cast<Packed>(b), i);
        sum += ((da + db) % l) * radix_[i];
        if (da + db >= l) overflow = true;
        mono += (da + db) * radix_[i];
        dot = (dot + da * db) % l;
      }
      add_[a * n + b] = sum;
      mono_[a * n + b] = overflow ? -1 : static_cast<std::int32_t>(mono);
      pair_[a * n + b] = static_cast<std::uint8_t>(dot);
    }
}

std::shared_ptr<const AlgebraCtx> AlgebraCtx::create(FieldCtx fctx, std::uint32_t m) {
  if (m == 0) throw Error(ErrorCode::OutOfRange, "m must be positive");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    size *= fctx.ell;
    if (size > 4096) throw Error(ErrorCode::ResourceBudgetExceeded, "ell^m above 4096");
  }
  if (fctx.ell > 255) throw Error(ErrorCode::OutOfRange, "ell above 255");
  return std::shared_ptr<const AlgebraCtx>(new AlgebraCtx(std::move(fctx), m));
}

std::vector<std::uint32_t> AlgebraCtx::digits(Packed x) const {
  std::vector<std::uint32_t> d(m_);
  for (std::uint32_t i = 0; i < m_; ++i) d[i] = digit(x, i);
  return d;
}

Packed AlgebraCtx::pack(std::span<const std::uint32_t> d) const {
  Packed x = 0;
  for (std::uint32_t i = 0; i < m_; ++i) x += (d[i] % fctx_.ell) * radix_[i];
  return x;
}

std::uint32_t AlgebraCtx::total_degree(Packed x) const {
  std::uint32_t s = 0;
  for (std::uint32_t i = 0; i < m_; ++i) s += digit(x, i);
  return s;
}

Packed AlgebraCtx::weight_neg(Packed a) const {
  Packed out = 0;
  for (std::uint32_t i = 0; i < m_; ++i) out += ((fctx_.ell - digit(a, i)) % fctx_.ell) * radix_[i];
  return out;
}

FieldElem AlgebraCtx::q_pow(std::int64_t e) const {
  std::int64_t l = fctx_.ell;
  std::int64_t r = e % l;
  if (r < 0) r += l;
  return q_powers_[static_cast<std::size_t>(r)];
}

Packed AlgebraCtx::character(const Character& chi) const {
  if (chi.exponents.size() != m_) throw Error(ErrorCode::OutOfRange, "character has wrong length");
  for (auto e : chi.exponents)
    if (e >= fctx_.ell) throw Error(ErrorCode::OutOfRange, "character exponent out of range");
  return pack(chi.exponents);
}

std::optional<std::pair<std::size_t, FieldElem>> AlgebraCtx::basis_product(std::size_t i, std::size_t j) const {
  Packed a = basis_mono(i), b = basis_group(i), c = basis_mono(j), d = basis_group(j);
  auto mono = mono_mul(a, c);
  if (!mono) return std::nullopt;
  return std::make_pair(basis_index(*mono, weight_add(b, d)), q_powers_[pairing(b, c)]);
}

std::optional<std::uint32_t> AlgebraCtx::q_log(FieldElem x) const {
  for (std::uint32_t e = 0; e < fctx_.ell; ++e)
    if (q_powers_[e] == x) return e;
  return std::nullopt;
}

AlgElem AlgElem::basis(const AlgebraCtx& ctx, std::size_t idx, FieldElem c) {
  AlgElem e(ctx);
  e.add_term(idx, c);
  return e;
}

FieldElem AlgElem::coeff(std::size_t idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? FieldElem{} : it->second;
}

void AlgElem::add_term(std::size_t idx, FieldElem c) {
  if (idx >= ctx_->dim()) throw Error(ErrorCode::OutOfRange, "basis index out of range");
  if (!c.code) return;
  auto [it, inserted] = terms_.emplace(idx, c);
  if (!inserted) {
    it->second = ctx_->field().add(it->second, c);
    if (!it->second.code) terms_.erase(it);
  }
}

namespace {
void require_same(const AlgebraCtx& a, const AlgebraCtx& b) {
  if (&a != &b) throw Error(ErrorCode::ContextMismatch, "elements belong to different algebras");
}
}  // namespace

AlgElem add(const AlgElem& x, const AlgElem& y) {
  require_same(x.ctx(), y.ctx());
  AlgElem out = x;
  for (auto& [k, v] : y.terms()) out.add_term(k, v);
  return out;
}

AlgElem scale(FieldElem c, const AlgElem& x) {
  AlgElem out(x.ctx());
  for (auto& [k, v] : x.terms()) out.add_term(k, x.ctx().field().mul(c, v));
  return out;
}

AlgElem multiply(const AlgElem& x, const AlgElem& y) {
  require_same(x.ctx(), y.ctx());
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  AlgElem out(ctx);
  for (auto& [i, a] : x.terms())
    for (auto& [j, b] : y.terms()) {
      auto prod = ctx.basis_product(i, j);
      if (prod) out.add_term(prod->first, f.mul(f.mul(a, b), prod->second));
    }
  return out;
}

AlgElem power(const AlgElem& x, std::uint32_t n) {
  AlgElem acc = one(x.ctx());
  for (std::uint32_t i = 0; i < n; ++i) acc = multiply(acc, x);
  return acc;
}

AlgElem one(const AlgebraCtx& ctx) { return AlgElem::basis(ctx, 0, ctx.field().one()); }

AlgElem gen_x(const AlgebraCtx& ctx, std::uint32_t i) {
  if (i >= ctx.m()) throw Error(ErrorCode::OutOfRange, "generator index out of range");
  return AlgElem::basis(ctx, ctx.basis_index(ctx.unit(i), 0), ctx.field().one());
}

AlgElem gen_g(const AlgebraCtx& ctx, std::uint32_t i) {
  if (i >= ctx.m()) throw Error(ErrorCode::OutOfRange, "generator index out of range");
  return AlgElem::basis(ctx, ctx.basis_index(0, ctx.unit(i)), ctx.field().one());
}

AlgElem group_elem(const AlgebraCtx& ctx, Packed b) {
  return AlgElem::basis(ctx, ctx.basis_index(0, b), ctx.field().one());
}

AlgElem twist_elem(const AlgebraCtx& ctx, std::uint32_t j) {
  Packed b = 0;
  for (std::uint32_t i = 0; i < j; ++i) b += ctx.unit(i);
  return group_elem(ctx, b);
}

void TensorElem::add_term(std::size_t i, std::size_t j, FieldElem c) {
  if (!c.code) return;
  auto [it, inserted] = terms_.emplace(std::make_pair(i, j), c);
  if (!inserted) {
    it->second = ctx_->field().add(it->second, c);
    if (!it->second.code) terms_.erase(it);
  }
}

TensorElem tensor_multiply(const TensorElem& x, const TensorElem& y) {
  require_same(x.ctx(), y.ctx());
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  TensorElem out(ctx);
  for (auto& [ij, a] : x.terms())
    for (auto& [kl, b] : y.terms()) {
      auto left = ctx.basis_product(ij.first, kl.first);
      if (!left) continue;
      auto right = ctx.basis_product(ij.second, kl.second);
      if (!right) continue;
      out.add_term(left->first, right->first, f.mul(f.mul(a, b), f.mul(left->second, right->second)));
    }
  return out;
}

namespace {

TensorElem coproduct_basis(const AlgebraCtx& ctx, std::size_t idx) {
  const Field& f = ctx.field();
  TensorElem acc(ctx);
  acc.add_term(0, 0, f.one());
  Packed a = ctx.basis_mono(idx), b = ctx.basis_group(idx);
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    TensorElem dx(ctx);
    dx.add_term(ctx.basis_index(ctx.unit(i), 0), 0, f.one());
    dx.add_term(ctx.basis_index(0, ctx.unit(i)), ctx.basis_index(ctx.unit(i), 0), f.one());
    for (std::uint32_t k = 0; k < ctx.digit(a, i); ++k) acc = tensor_multiply(acc, dx);
  }
  TensorElem dg(ctx);
  dg.add_term(ctx.basis_index(0, b), ctx.basis_index(0, b), f.one());
  return tensor_multiply(acc, dg);
}

AlgElem antipode_basis(const AlgebraCtx& ctx, std::size_t idx) {
  const Field& f = ctx.field();
  Packed a = ctx.basis_mono(idx), b = ctx.basis_group(idx);
  // S(X^a g^b) = S(g^b) S(X_m)^{a_m} ... S(X_1)^{a_1}
  AlgElem acc = group_elem(ctx, ctx.weight_neg(b));
  for (std::uint32_t i = ctx.m(); i-- > 0;) {
    AlgElem sx = scale(f.neg(f.one()), multiply(group_elem(ctx, ctx.weight_neg(ctx.unit(i))), gen_x(ctx, i)));
    for (std::uint32_t k = 0; k < ctx.digit(a, i); ++k) acc = multiply(acc, sx);
  }
  return acc;
}

}  // namespace

TensorElem coproduct(const AlgElem& x) {
  const AlgebraCtx& ctx = x.ctx();
  const Field& f = ctx.field();
  TensorElem out(ctx);
  for (auto& [idx, c] : x.terms()) {
    TensorElem d = coproduct_basis(ctx, idx);
    for (auto& [ij, v] : d.terms()) out.add_term(ij.first, ij.second, f.mul(c, v));
  }
  return out;
}

FieldElem counit(const AlgElem& x) {
  const Field& f = x.ctx().field();
  FieldElem acc = f.zero();
  for (auto& [idx, c] : x.terms())
    if (x.ctx().basis_mono(idx) == 0) acc = f.add(acc, c);
  return acc;
}

AlgElem antipode(const AlgElem& x) {
  AlgElem out(x.ctx());
  for (auto& [idx, c] : x.terms()) out = add(out, scale(c, antipode_basis(x.ctx(), idx)));
  return out;
}

HopfImage hopf_maps(const AlgElem& x) { return HopfImage{coproduct(x), counit(x), antipode(x)}; }

AlgElem tau(const AlgebraCtx& ctx, std::span<const FieldElem> lambda) {
  if (lambda.size() != ctx.m()) throw Error(ErrorCode::OutOfRange, "lambda has wrong length");
  bool nonzero = false;
  for (auto x : lambda) nonzero = nonzero || x.code;
  if (!nonzero) throw Error(ErrorCode::ZeroPoint, "lambda is the zero vector");
  AlgElem t(ctx);
  for (std::uint32_t i = 0; i < ctx.m(); ++i)
    t = add(t, scale(lambda[i], multiply(gen_x(ctx, i), twist_elem(ctx, i))));
  return t;
}

FieldElem q_multinomial(const FieldCtx& fctx, std::uint32_t n, std::span<const std::uint32_t> s) {
  if (n > fctx.ell) throw Error(ErrorCode::OutOfRange, "n exceeds ell");
  std::uint32_t total = 0;
  for (auto x : s) total += x;
  if (total > n) throw Error(ErrorCode::OutOfRange, "parts exceed n");
  const Field& f = *fctx.field;
  // Gaussian binomials by Pascal's rule: [N,K] = [N-1,K-1] + q^K [N-1,K]
  std::vector<std::vector<FieldElem>> binom(n + 1, std::vector<FieldElem>(n + 1));
  for (std::uint32_t nn = 0; nn <= n; ++nn) {
    binom[nn][0] = f.one();
    for (std::uint32_t k = 1; k <= nn; ++k) {
      FieldElem below = k <= nn - 1 ? binom[nn - 1][k] : f.zero();
      binom[nn][k] = f.add(binom[nn - 1][k - 1], f.mul(f.pow(fctx.q, k), below));
    }
  }
  FieldElem acc = f.one();
  std::uint32_t run = 0;
  for (auto x : s) {
    run += x;
    acc = f.mul(acc, binom[run][x]);
  }
  if (run < n) acc = f.mul(acc, binom[n][n - run]);
  return acc;
}

AlgElem idempotent(const AlgebraCtx& ctx, Packed chi) {
  const Field& f = ctx.field();
  FieldElem inv_order = f.inv(f.from_int(static_cast<std::int64_t>(ctx.lambda_dim())));
  AlgElem e(ctx);
  for (Packed g = 0; g < ctx.lambda_dim(); ++g)
    e.add_term(ctx.basis_index(0, g), f.mul(inv_order, f.inv(ctx.char_value(chi, g))));
  return e;
}

}  // namespace qea
