#include "qea/resolution.hpp"

#include "qea/error.hpp"

namespace qea {

std::size_t Resolution::total_dim() const {
  std::size_t s = 0;
  for (auto& t : terms) s += t->dim();
  return s;
}

namespace {

std::vector<std::vector<std::size_t>> group_by_weight(const std::vector<Packed>& w, std::size_t count) {
  std::vector<std::vector<std::size_t>> out(count);
  for (std::size_t k = 0; k < w.size(); ++k) out[w[k]].push_back(k);
  return out;
}

// Kernel of a weight-preserving map out of a projective, as homogeneous
// vectors grouped by weight.
std::vector<std::vector<Vec>> graded_kernel(const Field& f, const Matrix& a,
                                            const std::vector<std::vector<std::size_t>>& rows_by_weight,
                                            const Projective& src) {
  const std::size_t W = rows_by_weight.size();
  std::vector<std::vector<Vec>> out(W);
  for (Packed w = 0; w < W; ++w) {
    const auto& cols = src.weight_indices(w);
    if (cols.empty()) continue;
    Matrix null = linalg::nullspace(f, linalg::submatrix(a, rows_by_weight[w], cols));
    for (std::size_t r = 0; r < null.rows(); ++r) {
      Vec v(src.dim());
      for (std::size_t k = 0; k < cols.size(); ++k) v[cols[k]] = null(r, k);
      out[w].push_back(std::move(v));
    }
  }
  return out;
}

struct Generators {
  std::vector<Packed> tops;
  std::vector<Vec> images;
};

// Homogeneous vectors of K spanning K modulo rad K.
Generators top_of(const AlgebraCtx& ctx, const Projective& p, const std::vector<std::vector<Vec>>& kernel) {
  const Field& f = ctx.field();
  const std::size_t W = ctx.lambda_dim();
  std::vector<linalg::Subspace> rad(W, linalg::Subspace(f, p.dim()));
  for (Packed w = 0; w < W; ++w)
    for (auto& v : kernel[w])
      for (std::uint32_t i = 0; i < ctx.m(); ++i) {
        Vec u = p.apply_x(i, v);
        if (!linalg::is_zero_vec(u)) rad[ctx.weight_add(w, ctx.unit(i))].insert(u);
      }
  Generators g;
  for (Packed w = 0; w < W; ++w)
    for (auto& v : kernel[w])
      if (rad[w].insert(v)) {
        g.tops.push_back(w);
        g.images.push_back(v);
      }
  return g;
}

void check_budget(std::size_t total, std::size_t budget) {
  if (total > budget)
    throw Error(ErrorCode::ResourceBudgetExceeded,
                "resolution needs more than " + std::to_string(budget) + " dimensions in total");
}

}  // namespace

std::size_t graded_rank(const Field& f, const Matrix& a, const std::vector<Packed>& row_weights,
                        const std::vector<Packed>& col_weights, std::size_t weight_count) {
  auto rows = group_by_weight(row_weights, weight_count);
  auto cols = group_by_weight(col_weights, weight_count);
  std::size_t r = 0;
  for (std::size_t w = 0; w < weight_count; ++w)
    if (!rows[w].empty() && !cols[w].empty()) r += linalg::rank(f, linalg::submatrix(a, rows[w], cols[w]));
  return r;
}

Resolution assemble_resolution(const AModule& weighted_target, std::vector<std::vector<Packed>> tops,
                               std::vector<std::vector<Vec>> images) {
  Resolution res;
  res.ctx = weighted_target.ctx_ptr();
  res.target = weighted_target;
  for (std::size_t n = 0; n < tops.size(); ++n) {
    auto p = std::make_shared<const Projective>(res.ctx, tops[n]);
    if (images[n].size() != tops[n].size()) throw Error(ErrorCode::InvalidArgument, "one image per generator expected");
    if (n == 0) {
      Cover c{*p, images[0]};
      res.augmentation = cover_matrix(weighted_target, c);
      res.dense.push_back(res.augmentation);
      res.differentials.emplace_back();
    } else {
      for (auto& v : images[n])
        if (v.size() != res.terms[n - 1]->dim()) throw Error(ErrorCode::InvalidArgument, "image has wrong length");
      res.differentials.emplace_back(p, res.terms[n - 1], images[n]);
      res.dense.push_back(res.differentials.back().to_matrix());
    }
    res.terms.push_back(std::move(p));
  }
  return res;
}

Resolution minimal_resolution(const AModule& m, std::size_t n_max, std::size_t budget) {
  const AlgebraCtx& ctx = m.ctx();
  const Field& f = m.field();
  const std::size_t W = ctx.lambda_dim();
  AModule mw = to_weight_basis(m);
  Cover cov = projective_cover(mw);
  std::vector<std::vector<Packed>> tops{cov.projective.tops()};
  std::vector<std::vector<Vec>> images{cov.generators};
  Matrix current = cover_matrix(mw, cov);
  auto rows = group_by_weight(mw.weights(), W);
  auto p = std::make_shared<const Projective>(m.ctx_ptr(), tops[0]);
  std::size_t total = p->dim();
  check_budget(total, budget);
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto kernel = graded_kernel(f, current, rows, *p);
    Generators g = top_of(ctx, *p, kernel);
    auto next = std::make_shared<const Projective>(m.ctx_ptr(), g.tops);
    total += next->dim();
    check_budget(total, budget);
    ProjMap d(next, p, g.images);
    current = d.to_matrix();
    rows.assign(W, {});
    for (Packed w = 0; w < W; ++w) rows[w] = p->weight_indices(w);
    tops.push_back(std::move(g.tops));
    images.push_back(std::move(g.images));
    p = next;
  }
  Resolution res = assemble_resolution(mw, std::move(tops), std::move(images));
  verify_resolution(res);
  return res;
}

void verify_resolution(const Resolution& res) {
  const AlgebraCtx& ctx = *res.ctx;
  const Field& f = ctx.field();
  const std::size_t W = ctx.lambda_dim();
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvariantViolation, "resolution: " + what); };
  const std::size_t len = res.length();
  std::vector<std::size_t> ranks(len + 1);
  ranks[0] = graded_rank(f, res.augmentation, res.target.weights(), res.term(0).weights(), W);
  if (ranks[0] != res.target.dim()) fail("augmentation is not onto");
  for (std::size_t n = 1; n <= len; ++n) {
    const Projective& src = res.term(n);
    const Projective& dst = res.term(n - 1);
    ranks[n] = graded_rank(f, res.dense[n], dst.weights(), src.weights(), W);
    const auto& imgs = res.differentials[n].images();
    for (std::size_t j = 0; j < imgs.size(); ++j) {
      for (std::size_t idx = 0; idx < dst.dim(); ++idx) {
        if (!imgs[j][idx].code) continue;
        if (dst.mono_of(idx) == 0) fail("image of d_" + std::to_string(n) + " leaves the radical");
        if (dst.weight_at(idx) != src.top(j)) fail("d_" + std::to_string(n) + " does not preserve weights");
      }
      if (!linalg::is_zero_vec(linalg::apply(f, res.dense[n - 1], imgs[j])))
        fail("d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0");
    }
    if (ranks[n] + ranks[n - 1] != dst.dim()) fail("not exact at degree " + std::to_string(n - 1));
  }
}

HomComplex::HomComplex(const Resolution& res, const AModule& n) : res_(&res), n_(to_weight_basis(n)) {
  const AlgebraCtx& ctx = *res.ctx;
  if (n.ctx_ptr() != res.ctx) throw Error(ErrorCode::ContextMismatch, "module uses a different algebra");
  const Field& f = ctx.field();
  by_weight_ = group_by_weight(n_.weights(), ctx.lambda_dim());
  mono_.resize(ctx.lambda_dim());
  mono_[0] = Matrix::identity(f, n_.dim());
  for (Packed c = 1; c < ctx.lambda_dim(); ++c) {
    std::uint32_t i = 0;
    while (ctx.digit(c, i) == 0) ++i;
    mono_[c] = linalg::multiply(f, n_.x(i), mono_[c - ctx.unit(i)]);
  }
}

std::vector<std::size_t> HomComplex::offsets(const Projective& p) const {
  std::vector<std::size_t> off(p.summands() + 1, 0);
  for (std::size_t j = 0; j < p.summands(); ++j) off[j + 1] = off[j] + by_weight_[p.top(j)].size();
  return off;
}

std::size_t HomComplex::dim(std::size_t deg) const {
  if (deg > res_->length()) return 0;
  return offsets(res_->term(deg)).back();
}

std::size_t HomComplex::offset(std::size_t deg, std::size_t summand) const {
  return offsets(res_->term(deg))[summand];
}

Matrix HomComplex::precompose(const ProjMap& fmap) const {
  const Field& f = n_.field();
  const Projective& src = fmap.source();
  const Projective& dst = fmap.target();
  auto so = offsets(src), dof = offsets(dst);
  Matrix out(so.back(), dof.back());
  for (std::size_t k = 0; k < src.summands(); ++k) {
    const auto& rows = by_weight_[src.top(k)];
    if (rows.empty()) continue;
    for (auto& [idx, coef] : fmap.sparse()[k]) {
      std::size_t j = dst.summand_of(idx);
      const auto& cols = by_weight_[dst.top(j)];
      const Matrix& xc = mono_[dst.mono_of(idx)];
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t s = 0; s < cols.size(); ++s) {
          FieldElem v = xc(rows[r], cols[s]);
          if (v.code) out(so[k] + r, dof[j] + s) = f.add(out(so[k] + r, dof[j] + s), f.mul(coef, v));
        }
    }
  }
  return out;
}

std::vector<std::size_t> ExtData::dims() const {
  std::vector<std::size_t> d;
  for (auto& g : groups) d.push_back(g.dim());
  return d;
}

ExtData ext_groups(const HomComplex& hc, std::size_t n_max) {
  const Field& f = hc.module().field();
  ExtData out;
  Matrix prev;  // coboundary into the current degree
  for (std::size_t deg = 0; deg <= n_max; ++deg) {
    const std::size_t d = hc.dim(deg);
    Matrix cycles = d == 0 ? Matrix(0, 0) : linalg::nullspace(f, hc.coboundary(deg));
    Matrix bounds = deg == 0 || d == 0 ? Matrix(0, d) : linalg::transpose(prev);
    out.groups.emplace_back(f, d, bounds, cycles);
    if (deg < n_max) prev = hc.coboundary(deg);
  }
  return out;
}

std::vector<std::size_t> ext_dims(const AModule& m, const AModule& n, std::size_t n_max) {
  Resolution res = minimal_resolution(m, n_max + 1);
  HomComplex hc(res, n);
  return ext_groups(hc, n_max).dims();
}

}  // namespace qea
