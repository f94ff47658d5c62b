#include "qea/projective.hpp"

#include "qea/error.hpp"

namespace qea {

Projective::Projective(std::shared_ptr<const AlgebraCtx> ctx, std::vector<Packed> tops)
    : ctx_(std::move(ctx)), tops_(std::move(tops)), by_weight_(ctx_->lambda_dim()) {
  for (std::size_t idx = 0; idx < dim(); ++idx) by_weight_[weight_at(idx)].push_back(idx);
}

std::vector<Packed> Projective::weights() const {
  std::vector<Packed> w(dim());
  for (std::size_t idx = 0; idx < dim(); ++idx) w[idx] = weight_at(idx);
  return w;
}

Vec Projective::apply_mono(Packed c, std::span<const FieldElem> v) const {
  const Field& f = ctx_->field();
  const std::size_t L = ctx_->lambda_dim();
  Vec out(dim());
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (!v[idx].code) continue;
    auto t = ctx_->mono_mul(c, mono_of(idx));
    if (t) {
      std::size_t k = summand_of(idx) * L + *t;
      out[k] = f.add(out[k], v[idx]);
    }
  }
  return out;
}

Vec Projective::apply_g(std::uint32_t i, std::span<const FieldElem> v) const {
  const Field& f = ctx_->field();
  Vec out(dim());
  for (std::size_t idx = 0; idx < v.size(); ++idx)
    if (v[idx].code) out[idx] = f.mul(ctx_->q_pow(ctx_->digit(weight_at(idx), i)), v[idx]);
  return out;
}

Vec Projective::apply_tau(std::span<const FieldElem> lambda, std::span<const FieldElem> v) const {
  const Field& f = ctx_->field();
  const std::size_t L = ctx_->lambda_dim();
  Vec out(dim());
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (!v[idx].code) continue;
    Packed w = weight_at(idx);
    std::uint32_t twist = 0;
    for (std::uint32_t i = 0; i < ctx_->m(); ++i) {
      if (lambda[i].code) {
        auto t = ctx_->mono_mul(ctx_->unit(i), mono_of(idx));
        if (t) {
          std::size_t k = summand_of(idx) * L + *t;
          out[k] = f.add(out[k], f.mul(f.mul(lambda[i], ctx_->q_pow(twist)), v[idx]));
        }
      }
      twist += ctx_->digit(w, i);
    }
  }
  return out;
}

AModule Projective::as_module() const {
  const Field& f = ctx_->field();
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < ctx_->m(); ++i) {
    Matrix xm(dim(), dim());
    std::vector<FieldElem> diag(dim());
    for (std::size_t idx = 0; idx < dim(); ++idx) {
      auto t = ctx_->mono_mul(ctx_->unit(i), mono_of(idx));
      if (t) xm(summand_of(idx) * ctx_->lambda_dim() + *t, idx) = f.one();
      diag[idx] = ctx_->q_pow(ctx_->digit(weight_at(idx), i));
    }
    x.push_back(std::move(xm));
    g.push_back(Matrix::diagonal(diag));
  }
  return AModule(ctx_, std::move(x), std::move(g));
}

ProjMap::ProjMap(std::shared_ptr<const Projective> source, std::shared_ptr<const Projective> target,
                 std::vector<Vec> images)
    : src_(std::move(source)), tgt_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != src_->summands()) throw Error(ErrorCode::InvalidArgument, "one image per generator expected");
  for (auto& img : images_) {
    std::vector<std::pair<std::size_t, FieldElem>> nz;
    for (std::size_t k = 0; k < img.size(); ++k)
      if (img[k].code) nz.emplace_back(k, img[k]);
    sparse_.push_back(std::move(nz));
  }
}

Vec ProjMap::apply(std::span<const FieldElem> x) const {
  const AlgebraCtx& ctx = src_->ctx();
  const Field& f = ctx.field();
  const std::size_t L = ctx.lambda_dim();
  Vec out(tgt_->dim());
  for (std::size_t idx = 0; idx < x.size(); ++idx) {
    if (!x[idx].code) continue;
    std::size_t j = src_->summand_of(idx);
    Packed c = src_->mono_of(idx);
    for (auto& [t, coef] : sparse_[j]) {
      auto tc = ctx.mono_mul(c, tgt_->mono_of(t));
      if (!tc) continue;
      std::size_t k = tgt_->summand_of(t) * L + *tc;
      out[k] = f.add(out[k], f.mul(x[idx], coef));
    }
  }
  return out;
}

Matrix ProjMap::to_matrix() const {
  const Field& f = src_->ctx().field();
  Matrix m(tgt_->dim(), src_->dim());
  Vec e(src_->dim());
  for (std::size_t idx = 0; idx < src_->dim(); ++idx) {
    e[idx] = f.one();
    m.set_col(idx, apply(e));
    e[idx] = f.zero();
  }
  return m;
}

Cover projective_cover(const AModule& weighted) {
  const Field& f = weighted.field();
  const std::size_t n = weighted.dim();
  auto w = weighted.weights();
  linalg::Subspace rad(f, n);
  for (std::uint32_t i = 0; i < weighted.ctx().m(); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Vec col = weighted.x(i).col_vec(k);
      if (!linalg::is_zero_vec(col)) rad.insert(col);
    }
  std::vector<Packed> tops;
  std::vector<Vec> gens;
  for (std::size_t k = 0; k < n; ++k) {
    Vec e(n);
    e[k] = f.one();
    if (rad.insert(e)) {
      tops.push_back(w[k]);
      gens.push_back(std::move(e));
    }
  }
  return Cover{Projective(weighted.ctx_ptr(), std::move(tops)), std::move(gens)};
}

Matrix cover_matrix(const AModule& weighted, const Cover& cover) {
  const AlgebraCtx& ctx = weighted.ctx();
  const Field& f = weighted.field();
  const std::size_t L = ctx.lambda_dim();
  Matrix pi(weighted.dim(), cover.projective.dim());
  for (std::size_t j = 0; j < cover.generators.size(); ++j) {
    std::vector<Vec> images(L);
    images[0] = cover.generators[j];
    for (Packed c = 1; c < L; ++c) {
      std::uint32_t i = 0;
      while (ctx.digit(c, i) == 0) ++i;
      images[c] = linalg::apply(f, weighted.x(i), images[c - ctx.unit(i)]);
    }
    for (Packed c = 0; c < L; ++c) pi.set_col(cover.projective.index(j, c), images[c]);
  }
  return pi;
}

}  // namespace qea
