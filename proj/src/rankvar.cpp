#include "qea/rankvar.hpp"

#include <algorithm>
#include <map>

#include "qea/error.hpp"

namespace qea {

Point normalize_point(const Field& f, std::span<const FieldElem> v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].code) {
      FieldElem inv = f.inv(v[i]);
      Point out(v.size());
      for (std::size_t j = i; j < v.size(); ++j) out[j] = f.mul(inv, v[j]);
      return out;
    }
  throw Error(ErrorCode::ZeroPoint, "the zero vector is not a projective point");
}

bool point_less(const Field& f, const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] == b[i]) continue;
    return f.canonical_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

void sort_points(const Field& f, std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) { return point_less(f, a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

std::vector<Point> rational_points(const Field& f, std::uint32_t m) {
  std::vector<Point> out;
  const std::uint32_t q = f.order();
  for (std::uint32_t lead = 0; lead < m; ++lead) {
    std::size_t count = 1;
    for (std::uint32_t i = lead + 1; i < m; ++i) count *= q;
    for (std::size_t code = 0; code < count; ++code) {
      Point pt(m);
      pt[lead] = f.one();
      std::size_t rest = code;
      for (std::uint32_t i = m; i-- > lead + 1;) {
        pt[i] = FieldElem{static_cast<std::uint32_t>(rest % q)};
        rest /= q;
      }
      out.push_back(std::move(pt));
    }
  }
  sort_points(f, out);
  return out;
}

std::vector<Point> orbit_of(const AlgebraCtx& ctx, std::span<const FieldElem> lambda) {
  const Field& f = ctx.field();
  if (lambda.size() != ctx.m()) throw Error(ErrorCode::OutOfRange, "point has wrong length");
  if (linalg::is_zero_vec(lambda)) throw Error(ErrorCode::ZeroPoint, "the zero vector is not a projective point");
  std::vector<Point> out;
  for (Packed b = 0; b < ctx.lambda_dim(); ++b) {
    Point v(lambda.begin(), lambda.end());
    for (std::uint32_t i = 0; i < ctx.m(); ++i) v[i] = f.mul(v[i], ctx.q_pow(ctx.digit(b, i)));
    out.push_back(normalize_point(f, v));
  }
  sort_points(f, out);
  return out;
}

Point orbit_rep(const AlgebraCtx& ctx, std::span<const FieldElem> lambda) { return orbit_of(ctx, lambda).front(); }

bool membership(const AModule& m, std::span<const FieldElem> lambda) {
  Matrix t = restrict_to_tau(m, lambda);
  const std::size_t n = m.dim(), l = m.ctx().ell();
  if (n % l != 0) return true;
  return linalg::rank(m.field(), std::move(t)) != n - n / l;
}

OrbitVariety orbit_variety(const AlgebraCtx& ctx, const std::function<bool(const Point&)>& member) {
  const Field& f = ctx.field();
  OrbitVariety out;
  out.p = f.characteristic();
  out.r = f.degree();
  auto pts = rational_points(f, ctx.m());
  std::map<std::vector<std::uint32_t>, bool> value;
  auto key = [](const Point& pt) {
    std::vector<std::uint32_t> k;
    for (auto x : pt) k.push_back(x.code);
    return k;
  };
  for (auto& pt : pts) value[key(pt)] = member(pt);
  for (auto& pt : pts) {
    auto orbit = orbit_of(ctx, pt);
    bool v = value[key(pt)];
    for (auto& o : orbit)
      if (value[key(o)] != v) throw Error(ErrorCode::InvariantViolation, "membership is not constant on a G-orbit");
    if (!v) continue;
    out.points.push_back(pt);
    if (orbit.front() == pt) out.orbit_reps.push_back(pt);
  }
  return out;
}

OrbitVariety rank_variety(const AModule& m) {
  return orbit_variety(m.ctx(), [&](const Point& pt) { return membership(m, pt); });
}

Point psi(const AlgebraCtx& ctx, std::span<const FieldElem> lambda) {
  const Field& f = ctx.field();
  Point v(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) v[i] = f.pow(lambda[i], ctx.ell());
  return normalize_point(f, v);
}

std::vector<Point> psi_image(const AlgebraCtx& ctx, const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (auto& pt : pts) out.push_back(psi(ctx, pt));
  sort_points(ctx.field(), out);
  return out;
}

RootExtension root_extension(const AlgebraCtx& small) {
  const Field& f = small.field();
  auto big = Field::create(f.characteristic(), f.degree() * small.ell());
  RootExtension ext;
  ext.embed = f.embedding_into(*big);
  FieldCtx bctx{big, small.ell(), ext.embed[small.field_ctx().q.code]};
  ext.big = AlgebraCtx::create(bctx, small.m());
  std::vector<FieldElem> root_of(big->order());
  std::vector<bool> seen(big->order(), false);
  for (std::uint32_t c = 0; c < big->order(); ++c) {
    FieldElem p = big->pow(FieldElem{c}, small.ell());
    if (!seen[p.code]) {
      seen[p.code] = true;
      root_of[p.code] = FieldElem{c};
    }
  }
  for (auto e : ext.embed) {
    if (!seen[e.code]) throw Error(ErrorCode::InvariantViolation, "missing ell-th root in the extension");
    ext.root.push_back(root_of[e.code]);
  }
  return ext;
}

AModule extend_scalars(const AModule& m, const RootExtension& ext) {
  auto lift = [&](const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ext.embed[a(i, j).code];
    return out;
  };
  std::vector<Matrix> x, g;
  for (std::uint32_t i = 0; i < m.ctx().m(); ++i) {
    x.push_back(lift(m.x(i)));
    g.push_back(lift(m.g(i)));
  }
  return AModule(ext.big, std::move(x), std::move(g));
}

std::vector<Point> psi_closure(const AModule& m, const RootExtension& ext) {
  AModule big = extend_scalars(m, ext);
  std::vector<Point> out;
  for (auto& y : rational_points(m.field(), m.ctx().m())) {
    Vec lambda(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) lambda[i] = ext.root[y[i].code];
    if (membership(big, lambda)) out.push_back(y);
  }
  return out;
}

}  // namespace qea
