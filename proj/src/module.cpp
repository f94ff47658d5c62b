#include "qea/module.hpp"

#include <algorithm>
#include <map>

#include "qea/error.hpp"
#include "qea/projective.hpp"

namespace qea {

using linalg::Subspace;

AModule::AModule(std::shared_ptr<const AlgebraCtx> ctx, std::vector<Matrix> x, std::vector<Matrix> g)
    : ctx_(std::move(ctx)), x_(std::move(x)), g_(std::move(g)) {
  if (x_.size() != ctx_->m() || g_.size() != ctx_->m())
    throw Error(ErrorCode::InvalidArgument, "module needs one matrix per generator");
  dim_ = x_[0].rows();
  for (std::uint32_t i = 0; i < ctx_->m(); ++i)
    if (x_[i].rows() != dim_ || x_[i].cols() != dim_ || g_[i].rows() != dim_ || g_[i].cols() != dim_)
      throw Error(ErrorCode::InvalidArgument, "generator matrices must be square of equal size");
}

Matrix AModule::act(const AlgElem& a) const {
  if (&a.ctx() != ctx_.get()) throw Error(ErrorCode::ContextMismatch, "element and module use different algebras");
  const Field& f = field();
  Matrix out(dim_, dim_);
  for (auto& [idx, c] : a.terms()) {
    Packed mono = ctx_->basis_mono(idx), grp = ctx_->basis_group(idx);
    Matrix term = Matrix::identity(f, dim_);
    for (std::uint32_t i = 0; i < ctx_->m(); ++i)
      for (std::uint32_t k = 0; k < ctx_->digit(mono, i); ++k) term = linalg::multiply(f, term, x_[i]);
    for (std::uint32_t i = 0; i < ctx_->m(); ++i)
      for (std::uint32_t k = 0; k < ctx_->digit(grp, i); ++k) term = linalg::multiply(f, term, g_[i]);
    out = linalg::add(f, out, linalg::scale(f, term, c));
  }
  return out;
}

namespace {

std::string gen_name(char c, std::uint32_t i) { return std::string(1, c) + "_" + std::to_string(i + 1); }

void check_common(const Field& f, std::uint32_t ell, const std::vector<Matrix>& x, std::size_t dim) {
  Matrix zero(dim, dim);
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    if (!(linalg::power(f, x[i], ell) == zero))
      throw Error(ErrorCode::RelationViolation, gen_name('X', i) + "^" + std::to_string(ell) + " = 0");
    for (std::uint32_t j = i + 1; j < x.size(); ++j)
      if (!(linalg::multiply(f, x[i], x[j]) == linalg::multiply(f, x[j], x[i])))
        throw Error(ErrorCode::RelationViolation, gen_name('X', i) + " " + gen_name('X', j) + " = " + gen_name('X', j) +
                                                      " " + gen_name('X', i));
  }
}

}  // namespace

void AModule::validate() const {
  const Field& f = field();
  const std::uint32_t ell = ctx_->ell();
  check_common(f, ell, x_, dim_);
  Matrix id = Matrix::identity(f, dim_);
  for (std::uint32_t i = 0; i < ctx_->m(); ++i) {
    if (!(linalg::power(f, g_[i], ell) == id))
      throw Error(ErrorCode::RelationViolation, gen_name('g', i) + "^" + std::to_string(ell) + " = 1");
    for (std::uint32_t j = 0; j < ctx_->m(); ++j) {
      if (j > i && !(linalg::multiply(f, g_[i], g_[j]) == linalg::multiply(f, g_[j], g_[i])))
        throw Error(ErrorCode::RelationViolation, gen_name('g', i) + " " + gen_name('g', j) + " = " + gen_name('g', j) +
                                                      " " + gen_name('g', i));
      FieldElem s = i == j ? ctx_->field_ctx().q : f.one();
      Matrix lhs = linalg::multiply(f, g_[i], x_[j]);
      Matrix rhs = linalg::scale(f, linalg::multiply(f, x_[j], g_[i]), s);
      if (!(lhs == rhs))
        throw Error(ErrorCode::RelationViolation, gen_name('g', i) + " " + gen_name('X', j) + " = " +
                                                      (i == j ? "q " : "") + gen_name('X', j) + " " + gen_name('g', i));
    }
  }
}

bool AModule::has_weight_basis() const {
  for (auto& g : g_)
    if (!g.is_diagonal()) return false;
  return true;
}

std::vector<Packed> AModule::weights() const {
  std::vector<Packed> w(dim_, 0);
  for (std::size_t k = 0; k < dim_; ++k) {
    std::vector<std::uint32_t> d(ctx_->m());
    for (std::uint32_t i = 0; i < ctx_->m(); ++i) {
      if (!g_[i].is_diagonal()) throw Error(ErrorCode::InvalidArgument, "module is not in a weight basis");
      auto e = ctx_->q_log(g_[i](k, k));
      if (!e) throw Error(ErrorCode::RelationViolation, "diagonal of " + gen_name('g', i) + " is not a power of q");
      d[i] = *e;
    }
    w[k] = ctx_->pack(d);
  }
  return w;
}

LambdaModule::LambdaModule(std::shared_ptr<const AlgebraCtx> ctx, std::vector<Matrix> x)
    : ctx_(std::move(ctx)), x_(std::move(x)) {
  if (x_.size() != ctx_->m()) throw Error(ErrorCode::InvalidArgument, "module needs one matrix per generator");
  dim_ = x_[0].rows();
  for (auto& m : x_)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw Error(ErrorCode::InvalidArgument, "generator matrices must be square of equal size");
}

void LambdaModule::validate() const { check_common(ctx_->field(), ctx_->ell(), x_, dim_); }

bool ModuleMap::is_homomorphism() const {
  const Field& f = source->field();
  for (std::uint32_t i = 0; i < source->ctx().m(); ++i) {
    if (!(linalg::multiply(f, matrix, source->x(i)) == linalg::multiply(f, target->x(i), matrix))) return false;
    if (!(linalg::multiply(f, matrix, source->g(i)) == linalg::multiply(f, target->g(i), matrix))) return false;
  }
  return true;
}

AModule simple_module(std::shared_ptr<const AlgebraCtx> ctx, Packed chi) {
  if (chi >= ctx->lambda_dim()) throw Error(ErrorCode::OutOfRange, "character out of range");
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < ctx->m(); ++i) {
    x.emplace_back(1, 1);
    Matrix gi(1, 1);
    gi(0, 0) = ctx->q_pow(ctx->digit(chi, i));
    g.push_back(gi);
  }
  return AModule(ctx, std::move(x), std::move(g));
}

AModule trivial_module(std::shared_ptr<const AlgebraCtx> ctx) { return simple_module(std::move(ctx), 0); }

AModule regular_module(std::shared_ptr<const AlgebraCtx> ctx) {
  const std::size_t n = ctx->dim();
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < ctx->m(); ++i) {
    for (bool is_x : {true, false}) {
      AlgElem gen = is_x ? gen_x(*ctx, i) : gen_g(*ctx, i);
      Matrix mat(n, n);
      std::size_t gi = gen.terms().begin()->first;
      for (std::size_t j = 0; j < n; ++j) {
        auto prod = ctx->basis_product(gi, j);
        if (prod) mat(prod->first, j) = prod->second;
      }
      (is_x ? x : g).push_back(std::move(mat));
    }
  }
  return AModule(ctx, std::move(x), std::move(g));
}

AModule module_from_subspace(std::shared_ptr<const AlgebraCtx> ctx, const Subspace& s, const AmbientAction& act_x,
                             const AmbientAction& act_g) {
  const auto& rows = s.basis();
  const std::size_t k = rows.size();
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < ctx->m(); ++i) {
    Matrix xm(k, k), gm(k, k);
    for (std::size_t c = 0; c < k; ++c) {
      xm.set_col(c, s.coords(act_x(i, rows[c])));
      gm.set_col(c, s.coords(act_g(i, rows[c])));
    }
    x.push_back(std::move(xm));
    g.push_back(std::move(gm));
  }
  return AModule(std::move(ctx), std::move(x), std::move(g));
}

AModule v_module(std::shared_ptr<const AlgebraCtx> ctx, std::span<const FieldElem> lambda, bool primed) {
  const Field& f = ctx->field();
  AlgElem t = tau(*ctx, lambda);
  AlgElem gen = primed ? t : power(t, ctx->ell() - 1);
  AModule reg = regular_module(ctx);
  Subspace s(f, ctx->dim());
  for (std::size_t j = 0; j < ctx->dim(); ++j) {
    AlgElem prod = multiply(AlgElem::basis(*ctx, j, f.one()), gen);
    Vec col(ctx->dim());
    for (auto& [idx, c] : prod.terms()) col[idx] = c;
    s.insert(col);
  }
  auto act_x = [&](std::uint32_t i, std::span<const FieldElem> v) { return linalg::apply(f, reg.x(i), v); };
  auto act_g = [&](std::uint32_t i, std::span<const FieldElem> v) { return linalg::apply(f, reg.g(i), v); };
  return module_from_subspace(ctx, s, act_x, act_g);
}

namespace {

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

void same_ctx(const AModule& a, const AModule& b) {
  if (a.ctx_ptr() != b.ctx_ptr()) throw Error(ErrorCode::ContextMismatch, "modules use different algebras");
}

}  // namespace

AModule direct_sum(const AModule& a, const AModule& b) {
  same_ctx(a, b);
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < a.ctx().m(); ++i) {
    x.push_back(block_diag(a.x(i), b.x(i)));
    g.push_back(block_diag(a.g(i), b.g(i)));
  }
  return AModule(a.ctx_ptr(), std::move(x), std::move(g));
}

AModule tensor(const AModule& a, const AModule& b) {
  same_ctx(a, b);
  const Field& f = a.field();
  Matrix ia = Matrix::identity(f, a.dim());
  Matrix ib = Matrix::identity(f, b.dim());
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < a.ctx().m(); ++i) {
    x.push_back(linalg::add(f, linalg::kron(f, a.x(i), ib), linalg::kron(f, a.g(i), b.x(i))));
    g.push_back(linalg::kron(f, a.g(i), b.g(i)));
  }
  return AModule(a.ctx_ptr(), std::move(x), std::move(g));
}

AModule dual(const AModule& a) {
  const Field& f = a.field();
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < a.ctx().m(); ++i) {
    Matrix ginv = linalg::power(f, a.g(i), a.ctx().ell() - 1);
    x.push_back(linalg::transpose(linalg::scale(f, linalg::multiply(f, ginv, a.x(i)), f.neg(f.one()))));
    g.push_back(linalg::transpose(ginv));
  }
  return AModule(a.ctx_ptr(), std::move(x), std::move(g));
}

AModule twist(const AModule& a, Packed chi) {
  const Field& f = a.field();
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < a.ctx().m(); ++i) {
    FieldElem s = a.ctx().q_pow(a.ctx().digit(chi, i));
    x.push_back(linalg::scale(f, a.x(i), s));
    g.push_back(linalg::scale(f, a.g(i), s));
  }
  return AModule(a.ctx_ptr(), std::move(x), std::move(g));
}

Matrix restrict_to_tau(const AModule& a, std::span<const FieldElem> lambda) {
  const Field& f = a.field();
  const AlgebraCtx& ctx = a.ctx();
  if (lambda.size() != ctx.m()) throw Error(ErrorCode::OutOfRange, "lambda has wrong length");
  if (linalg::is_zero_vec(lambda)) throw Error(ErrorCode::ZeroPoint, "lambda is the zero vector");
  Matrix t(a.dim(), a.dim());
  Matrix h = Matrix::identity(f, a.dim());
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    if (lambda[i].code) t = linalg::add(f, t, linalg::scale(f, linalg::multiply(f, a.x(i), h), lambda[i]));
    h = linalg::multiply(f, h, a.g(i));
  }
  return t;
}

AModule induce_from_lambda(std::shared_ptr<const AlgebraCtx> ctx, const LambdaModule& n) {
  if (n.ctx_ptr() != ctx) throw Error(ErrorCode::ContextMismatch, "module uses a different algebra");
  const std::size_t d = n.dim(), L = ctx->lambda_dim();
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < ctx->m(); ++i) {
    Matrix xm(L * d, L * d), gm(L * d, L * d);
    for (Packed b = 0; b < L; ++b) {
      FieldElem s = ctx->q_pow(-static_cast<std::int64_t>(ctx->digit(b, i)));
      Packed b2 = ctx->weight_add(b, ctx->unit(i));
      for (std::size_t v = 0; v < d; ++v) {
        gm(b2 * d + v, b * d + v) = ctx->field().one();
        for (std::size_t r = 0; r < d; ++r) xm(b * d + r, b * d + v) = ctx->field().mul(s, n.x(i)(r, v));
      }
    }
    x.push_back(std::move(xm));
    g.push_back(std::move(gm));
  }
  return AModule(ctx, std::move(x), std::move(g));
}

LambdaModule restrict_to_lambda(const AModule& a) { return LambdaModule(a.ctx_ptr(), a.xs()); }

WeightForm weight_form(const AModule& a) {
  const Field& f = a.field();
  const AlgebraCtx& ctx = a.ctx();
  const std::size_t n = a.dim();
  if (a.has_weight_basis()) {
    a.weights();  // rejects diagonals that are not powers of q
    return WeightForm{a, Matrix::identity(f, n), Matrix::identity(f, n), true};
  }
  struct Part {
    Matrix rows;
    std::vector<std::size_t> pivots;
    std::vector<std::uint32_t> digits;
  };
  std::vector<Part> parts;
  {
    Part p{Matrix::identity(f, n), {}, {}};
    for (std::size_t i = 0; i < n; ++i) p.pivots.push_back(i);
    parts.push_back(std::move(p));
  }
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    std::vector<Part> next;
    for (auto& part : parts) {
      const std::size_t d = part.rows.rows();
      Matrix c(d, d);
      for (std::size_t k = 0; k < d; ++k) {
        Vec img = linalg::apply(f, a.g(i), part.rows.row(k));
        for (std::size_t j = 0; j < d; ++j) c(j, k) = img[part.pivots[j]];
      }
      for (std::uint32_t e = 0; e < ctx.ell(); ++e) {
        Matrix shifted = c;
        for (std::size_t j = 0; j < d; ++j) shifted(j, j) = f.sub(shifted(j, j), ctx.q_pow(e));
        Matrix null = linalg::nullspace(f, shifted);
        if (null.rows() == 0) continue;
        auto ech = linalg::rref(f, linalg::multiply(f, null, part.rows));
        Part np{std::move(ech.rows), std::move(ech.pivots), part.digits};
        np.digits.push_back(e);
        next.push_back(std::move(np));
      }
    }
    parts = std::move(next);
  }
  std::size_t total = 0;
  for (auto& p : parts) total += p.rows.rows();
  if (total != n) throw Error(ErrorCode::RelationViolation, "group generators are not simultaneously diagonalizable");
  std::stable_sort(parts.begin(), parts.end(),
                   [&](const Part& x, const Part& y) { return ctx.pack(x.digits) < ctx.pack(y.digits); });
  Matrix basis(n, n);
  std::vector<Packed> w;
  std::size_t col = 0;
  for (auto& p : parts)
    for (std::size_t k = 0; k < p.rows.rows(); ++k) {
      basis.set_col(col++, p.rows.row(k));
      w.push_back(ctx.pack(p.digits));
    }
  Matrix inv = linalg::inverse(f, basis);
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    x.push_back(linalg::multiply(f, inv, linalg::multiply(f, a.x(i), basis)));
    std::vector<FieldElem> diag(n);
    for (std::size_t k = 0; k < n; ++k) diag[k] = ctx.q_pow(ctx.digit(w[k], i));
    g.push_back(Matrix::diagonal(diag));
  }
  return WeightForm{AModule(a.ctx_ptr(), std::move(x), std::move(g)), std::move(basis), std::move(inv), false};
}

AModule to_weight_basis(const AModule& a) { return weight_form(a).module; }

namespace {

std::vector<std::vector<std::size_t>> indices_by_weight(const AlgebraCtx& ctx, const std::vector<Packed>& w) {
  std::vector<std::vector<std::size_t>> out(ctx.lambda_dim());
  for (std::size_t k = 0; k < w.size(); ++k) out[w[k]].push_back(k);
  return out;
}

// Hom between two modules already in weight bases; returns block-diagonal matrices.
std::vector<Matrix> weighted_hom(const AModule& m, const AModule& n) {
  const AlgebraCtx& ctx = m.ctx();
  const Field& f = m.field();
  auto im = indices_by_weight(ctx, m.weights());
  auto in = indices_by_weight(ctx, n.weights());
  const std::size_t W = ctx.lambda_dim();
  std::vector<std::size_t> off(W + 1, 0);
  for (Packed w = 0; w < W; ++w) off[w + 1] = off[w] + in[w].size() * im[w].size();
  const std::size_t vars = off[W];
  std::size_t eqs = 0;
  for (std::uint32_t i = 0; i < ctx.m(); ++i)
    for (Packed w = 0; w < W; ++w) eqs += in[ctx.weight_add(w, ctx.unit(i))].size() * im[w].size();
  Matrix c(eqs, vars);
  std::size_t row = 0;
  for (std::uint32_t i = 0; i < ctx.m(); ++i)
    for (Packed w = 0; w < W; ++w) {
      Packed w2 = ctx.weight_add(w, ctx.unit(i));
      const auto &src_m = im[w], &dst_m = im[w2], &src_n = in[w], &dst_n = in[w2];
      for (std::size_t r = 0; r < dst_n.size(); ++r)
        for (std::size_t s = 0; s < src_m.size(); ++s, ++row) {
          // sum_k T_{w2}(r,k) XM(k,s) - sum_k XN(r,k) T_w(k,s)
          for (std::size_t k = 0; k < dst_m.size(); ++k) {
            FieldElem v = m.x(i)(dst_m[k], src_m[s]);
            if (v.code) c(row, off[w2] + r * dst_m.size() + k) = f.add(c(row, off[w2] + r * dst_m.size() + k), v);
          }
          for (std::size_t k = 0; k < src_n.size(); ++k) {
            FieldElem v = n.x(i)(dst_n[r], src_n[k]);
            if (v.code) c(row, off[w] + k * src_m.size() + s) = f.sub(c(row, off[w] + k * src_m.size() + s), v);
          }
        }
    }
  Matrix null = linalg::nullspace(f, c);
  std::vector<Matrix> basis;
  for (std::size_t b = 0; b < null.rows(); ++b) {
    Matrix t(n.dim(), m.dim());
    for (Packed w = 0; w < W; ++w)
      for (std::size_t r = 0; r < in[w].size(); ++r)
        for (std::size_t s = 0; s < im[w].size(); ++s) t(in[w][r], im[w][s]) = null(b, off[w] + r * im[w].size() + s);
    basis.push_back(std::move(t));
  }
  return basis;
}

Matrix to_original(const Field& f, const WeightForm& fm, const WeightForm& fn, const Matrix& t) {
  if (fm.identity && fn.identity) return t;
  return linalg::multiply(f, fn.basis, linalg::multiply(f, t, fm.inverse));
}

}  // namespace

std::vector<Matrix> hom_space(const AModule& m, const AModule& n) {
  same_ctx(m, n);
  WeightForm fm = weight_form(m), fn = weight_form(n);
  std::vector<Matrix> basis = weighted_hom(fm.module, fn.module);
  for (auto& t : basis) t = to_original(m.field(), fm, fn, t);
  return basis;
}

bool is_projective(const AModule& a) {
  const std::size_t n = a.dim();
  if (n == 0) return true;
  Matrix cat(n, n * a.ctx().m());
  for (std::uint32_t i = 0; i < a.ctx().m(); ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) cat(r, i * n + c) = a.x(i)(r, c);
  std::size_t top = n - linalg::rank(a.field(), std::move(cat));
  return n == a.ctx().lambda_dim() * top;
}

AModule omega(const AModule& a) {
  const AlgebraCtx& ctx = a.ctx();
  const Field& f = a.field();
  AModule mw = to_weight_basis(a);
  Cover cov = projective_cover(mw);
  Matrix pi = cover_matrix(mw, cov);
  auto im = indices_by_weight(ctx, mw.weights());
  const Projective& p = cov.projective;
  Subspace ker(f, p.dim());
  for (Packed w = 0; w < ctx.lambda_dim(); ++w) {
    const auto& cols = p.weight_indices(w);
    if (cols.empty()) continue;
    Matrix null = linalg::nullspace(f, linalg::submatrix(pi, im[w], cols));
    for (std::size_t r = 0; r < null.rows(); ++r) {
      Vec v(p.dim());
      for (std::size_t k = 0; k < cols.size(); ++k) v[cols[k]] = null(r, k);
      ker.insert(v);
    }
  }
  return module_from_subspace(
      a.ctx_ptr(), ker, [&](std::uint32_t i, std::span<const FieldElem> v) { return p.apply_x(i, v); },
      [&](std::uint32_t i, std::span<const FieldElem> v) { return p.apply_g(i, v); });
}

AModule omega_inverse(const AModule& a) { return dual(omega(dual(a))); }

AModule omega_power(const AModule& a, int i) {
  AModule cur = a;
  for (int k = 0; k < i; ++k) cur = omega(cur);
  for (int k = 0; k > i; --k) cur = omega_inverse(cur);
  return cur;
}

std::optional<Matrix> find_isomorphism(const AModule& m, const AModule& n, std::size_t trials, Rng& rng) {
  same_ctx(m, n);
  if (m.dim() != n.dim()) return std::nullopt;
  const Field& f = m.field();
  WeightForm fm = weight_form(m), fn = weight_form(n);
  auto wm = fm.module.weights(), wn = fn.module.weights();
  std::sort(wm.begin(), wm.end());
  std::sort(wn.begin(), wn.end());
  if (wm != wn) return std::nullopt;
  auto mn = weighted_hom(fm.module, fn.module);
  auto nm = weighted_hom(fn.module, fm.module);
  if (mn.size() != nm.size()) return std::nullopt;
  if (weighted_hom(fm.module, fm.module).size() != weighted_hom(fn.module, fn.module).size()) return std::nullopt;
  if (mn.empty()) return m.dim() == 0 ? std::optional<Matrix>(Matrix(0, 0)) : std::nullopt;
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix cand(n.dim(), m.dim());
    for (auto& b : mn) cand = linalg::add(f, cand, linalg::scale(f, b, random_elem(f, rng)));
    if (linalg::rank(f, cand) == m.dim()) return to_original(f, fm, fn, cand);
  }
  return std::nullopt;
}

bool is_isomorphic(const AModule& m, const AModule& n, std::size_t trials, Rng& rng) {
  return find_isomorphism(m, n, trials, rng).has_value();
}

SubQuotient generated_submodule(const AModule& a, const std::vector<Vec>& generators) {
  const AlgebraCtx& ctx = a.ctx();
  const Field& f = a.field();
  auto w = a.weights();
  Subspace u(f, a.dim());
  for (auto& gen : generators) {
    std::vector<Vec> images(ctx.lambda_dim());
    images[0] = gen;
    for (Packed c = 1; c < ctx.lambda_dim(); ++c) {
      std::uint32_t i = 0;
      while (ctx.digit(c, i) == 0) ++i;
      images[c] = linalg::apply(f, a.x(i), images[c - ctx.unit(i)]);
    }
    for (auto& v : images) u.insert(v);
  }
  auto act_x = [&](std::uint32_t i, std::span<const FieldElem> v) { return linalg::apply(f, a.x(i), v); };
  auto act_g = [&](std::uint32_t i, std::span<const FieldElem> v) { return linalg::apply(f, a.g(i), v); };
  AModule sub = module_from_subspace(a.ctx_ptr(), u, act_x, act_g);
  std::vector<bool> piv(a.dim(), false);
  for (auto p : u.pivots()) piv[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!piv[k]) keep.push_back(k);
  const std::size_t qd = keep.size();
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < ctx.m(); ++i) {
    Matrix xm(qd, qd);
    std::vector<FieldElem> diag(qd);
    for (std::size_t t = 0; t < qd; ++t) {
      Vec img = u.reduce(a.x(i).col_vec(keep[t]));
      for (std::size_t s = 0; s < qd; ++s) xm(s, t) = img[keep[s]];
      diag[t] = ctx.q_pow(ctx.digit(w[keep[t]], i));
    }
    x.push_back(std::move(xm));
    g.push_back(Matrix::diagonal(diag));
  }
  return SubQuotient{std::move(sub), AModule(a.ctx_ptr(), std::move(x), std::move(g))};
}

ProjectiveSplit split_projective(const AModule& a) {
  const AlgebraCtx& ctx = a.ctx();
  const Field& f = a.field();
  AModule mw = to_weight_basis(a);
  Matrix s = Matrix::identity(f, mw.dim());
  for (std::uint32_t i = 0; i < ctx.m(); ++i)
    for (std::uint32_t k = 0; k + 1 < ctx.ell(); ++k) s = linalg::multiply(f, mw.x(i), s);
  auto w = mw.weights();
  Subspace img(f, mw.dim());
  std::vector<Vec> gens;
  std::vector<Packed> tops;
  for (std::size_t k = 0; k < mw.dim(); ++k) {
    Vec col = s.col_vec(k);
    if (linalg::is_zero_vec(col) || !img.insert(col)) continue;
    Vec e(mw.dim());
    e[k] = f.one();
    gens.push_back(std::move(e));
    tops.push_back(w[k]);
  }
  if (gens.empty()) return ProjectiveSplit{std::move(mw), {}};
  return ProjectiveSplit{generated_submodule(mw, gens).quotient, std::move(tops)};
}

FieldElem random_elem(const Field& f, Rng& rng) {
  return {static_cast<std::uint32_t>(rng() % f.order())};
}

Vec random_vec(const Field& f, std::size_t n, Rng& rng) {
  Vec v(n);
  for (auto& x : v) x = random_elem(f, rng);
  return v;
}

std::vector<FieldElem> random_point(const Field& f, std::uint32_t m, Rng& rng) {
  for (;;) {
    Vec v = random_vec(f, m, rng);
    if (!linalg::is_zero_vec(v)) return v;
  }
}

AModule random_module(std::shared_ptr<const AlgebraCtx> ctx, Rng& rng) {
  const Field& f = ctx->field();
  std::vector<Packed> tops;
  const std::size_t s = 1 + rng() % 2;
  for (std::size_t k = 0; k < s; ++k) tops.push_back(static_cast<Packed>(rng() % ctx->lambda_dim()));
  Projective p(ctx, tops);
  std::vector<Vec> gens;
  const std::size_t g = rng() % 3;
  for (std::size_t k = 0; k < g; ++k) {
    Packed w = static_cast<Packed>(rng() % ctx->lambda_dim());
    Vec v(p.dim());
    for (auto idx : p.weight_indices(w)) v[idx] = random_elem(f, rng);
    gens.push_back(std::move(v));
  }
  return generated_submodule(p.as_module(), gens).quotient;
}

}  // namespace qea
