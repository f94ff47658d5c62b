#include "qea/cohom.hpp"

#include <algorithm>
#include <cctype>

#include "qea/error.hpp"

namespace qea {

// ---- polynomials

std::uint32_t Poly::degree() const {
  std::optional<std::uint32_t> d;
  for (auto& [e, c] : terms) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    if (d && *d != s) throw Error(ErrorCode::InvalidArgument, "polynomial is not homogeneous");
    d = s;
  }
  return d.value_or(0);
}

namespace {

struct PolyParser {
  const Field& f;
  std::uint32_t m;
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::RecipeParse, "polynomial '" + s + "': " + what + " at position " + std::to_string(pos));
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  std::uint64_t number() {
    skip();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected a number");
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
      if (v > (1ull << 40)) fail("number too large");
    }
    return v;
  }
  FieldElem coefficient() {
    if (peek('#')) {
      ++pos;
      auto c = number();
      if (c >= f.order()) fail("field element code out of range");
      return FieldElem{static_cast<std::uint32_t>(c)};
    }
    return f.from_int(static_cast<std::int64_t>(number()));
  }
  // factor: coefficient | y<i>[^e]
  void factor(FieldElem& c, Exponent& e) {
    skip();
    if (pos < s.size() && s[pos] == 'y') {
      ++pos;
      auto i = number();
      if (i < 1 || i > m) fail("variable index out of range");
      std::uint64_t k = 1;
      if (peek('^')) {
        ++pos;
        k = number();
      }
      e[i - 1] += static_cast<std::uint32_t>(k);
    } else {
      c = f.mul(c, coefficient());
    }
  }
  Poly parse() {
    Poly p;
    p.vars = m;
    bool first = true;
    while (true) {
      skip();
      if (pos >= s.size()) {
        if (first) fail("empty polynomial");
        break;
      }
      bool negative = false;
      if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
      } else if (!first) {
        fail("expected + or -");
      }
      FieldElem c = f.one();
      Exponent e(m, 0);
      factor(c, e);
      while (peek('*')) {
        ++pos;
        factor(c, e);
      }
      if (negative) c = f.neg(c);
      FieldElem& slot = p.terms[e];
      slot = f.add(slot, c);
      if (!slot.code) p.terms.erase(e);
      first = false;
    }
    return p;
  }
};

}  // namespace

Poly parse_poly(const Field& f, std::uint32_t m, const std::string& text) {
  Poly p = PolyParser{f, m, text}.parse();
  try {
    p.degree();
  } catch (const Error&) {
    throw Error(ErrorCode::RecipeParse, "polynomial '" + text + "' is not homogeneous");
  }
  return p;
}

std::string format_poly(const Field& f, const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // print in the monomial order used everywhere else
  std::vector<std::pair<Exponent, FieldElem>> terms(p.terms.begin(), p.terms.end());
  std::reverse(terms.begin(), terms.end());
  for (auto& [e, c] : terms) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "y" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = c.code < f.characteristic() ? std::to_string(c.code) : "#" + std::to_string(c.code);
    if (mono.empty())
      out += coef;
    else if (c == f.one())
      out += mono;
    else
      out += coef + "*" + mono;
  }
  return out;
}

FieldElem evaluate(const Field& f, const Poly& p, std::span<const FieldElem> point) {
  FieldElem s = f.zero();
  for (auto& [e, c] : p.terms) {
    FieldElem t = c;
    for (std::size_t i = 0; i < e.size(); ++i) t = f.mul(t, f.pow(point[i], e[i]));
    s = f.add(s, t);
  }
  return s;
}

std::vector<Exponent> monomials(std::uint32_t m, std::uint32_t d) {
  std::vector<Exponent> out;
  Exponent e(m, 0);
  auto rec = [&](auto&& self, std::uint32_t i, std::uint32_t left) -> void {
    if (i + 1 == m) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (m > 0) rec(rec, 0, d);
  return out;
}

// ---- the ring

CohomologyRing::CohomologyRing(Resolution res) : res_(std::move(res)) {}

std::shared_ptr<const CohomologyRing> CohomologyRing::build(std::shared_ptr<const AlgebraCtx> ctx, std::size_t n_max,
                                                            std::size_t budget) {
  return from_resolution(minimal_resolution(trivial_module(std::move(ctx)), n_max + 1, budget));
}

std::shared_ptr<const CohomologyRing> CohomologyRing::from_resolution(Resolution res) {
  if (res.target.dim() != 1 || res.length() < 2)
    throw Error(ErrorCode::InvalidArgument, "need a resolution of k of length at least 2");
  for (std::uint32_t i = 0; i < res.ctx->m(); ++i)
    if (!res.target.x(i).is_zero() || res.target.weights()[0] != 0)
      throw Error(ErrorCode::InvalidArgument, "the resolved module is not k");
  std::shared_ptr<CohomologyRing> r(new CohomologyRing(std::move(res)));
  r->lift_basis();
  r->normalize();
  r->check_dictionary();
  return r;
}

std::vector<std::size_t> CohomologyRing::trivial_generators(std::size_t n) const {
  std::vector<std::size_t> out;
  const Projective& p = res_.term(n);
  for (std::size_t j = 0; j < p.summands(); ++j)
    if (p.top(j) == 0) out.push_back(j);
  return out;
}

std::vector<ProjMap> CohomologyRing::lift_class(const Vec& values) const {
  const Field& f = ctx().field();
  const std::size_t W = ctx().lambda_dim();
  std::vector<ProjMap> out;
  const std::size_t len = res_.length();
  for (std::size_t n = 0; n + 2 <= len; ++n) {
    const Projective& src = res_.term(n + 2);
    const Projective& dst = res_.term(n);
    std::vector<Vec> images;
    std::vector<std::optional<linalg::Solver>> solvers(W);
    for (std::size_t j = 0; j < src.summands(); ++j) {
      Vec x(dst.dim());
      if (n == 0) {
        x[dst.index(0, 0)] = values[j];
      } else {
        Vec target = out[n - 1].apply(res_.differentials[n + 2].images()[j]);
        const Packed w = src.top(j);
        const auto& cols = dst.weight_indices(w);
        const auto& rows = res_.term(n - 1).weight_indices(w);
        Vec rhs;
        for (auto r : rows) rhs.push_back(target[r]);
        for (std::size_t k = 0; k < target.size(); ++k)
          if (target[k].code && res_.term(n - 1).weight_at(k) != w)
            throw Error(ErrorCode::InvariantViolation, "chain lift left its weight space");
        if (!cols.empty()) {
          if (!solvers[w]) solvers[w].emplace(f, linalg::submatrix(res_.dense[n], rows, cols));
          auto sol = solvers[w]->solve(rhs);
          if (!sol) throw Error(ErrorCode::InvariantViolation, "chain lift does not exist");
          for (std::size_t k = 0; k < cols.size(); ++k) x[cols[k]] = (*sol)[k];
        } else if (!linalg::is_zero_vec(rhs)) {
          throw Error(ErrorCode::InvariantViolation, "chain lift does not exist");
        }
      }
      images.push_back(std::move(x));
    }
    out.emplace_back(res_.terms[n + 2], res_.terms[n], std::move(images));
  }
  return out;
}

void CohomologyRing::lift_basis() {
  const std::uint32_t m = ctx().m();
  auto triv = trivial_generators(2);
  if (triv.size() != m)
    throw Error(ErrorCode::NormalizationFailure,
                "Ext^2(k, k) has dimension " + std::to_string(triv.size()) + ", expected " + std::to_string(m));
  lifts_.clear();
  for (std::uint32_t k = 0; k < m; ++k) {
    Vec v(res_.term(2).summands());
    v[triv[k]] = ctx().field().one();
    lifts_.push_back(lift_class(v));
  }
}

void CohomologyRing::normalize() {
  const Field& f = ctx().field();
  const std::uint32_t m = ctx().m();
  auto triv = trivial_generators(2);
  // R(k, j) = restriction of the k-th basis class to the j-th coordinate line
  Matrix r(m, m);
  for (std::uint32_t k = 0; k < m; ++k) {
    Vec v(res_.term(2).summands());
    v[triv[k]] = f.one();
    for (std::uint32_t j = 0; j < m; ++j) {
      Vec e(m);
      e[j] = f.one();
      r(k, j) = restrict_values(v, 2, e);
    }
  }
  if (linalg::rank(f, r) != m)
    throw Error(ErrorCode::NormalizationFailure, "restriction to the coordinate lines is degenerate");
  Matrix c = linalg::inverse(f, r);
  std::vector<std::vector<ProjMap>> lifts;
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<ProjMap> li;
    for (std::size_t n = 0; n < lifts_[0].size(); ++n) {
      const Projective& src = res_.term(n + 2);
      std::vector<Vec> images(src.summands(), Vec(res_.term(n).dim()));
      for (std::uint32_t k = 0; k < m; ++k) {
        if (!c(i, k).code) continue;
        for (std::size_t j = 0; j < src.summands(); ++j) f.axpy(images[j], lifts_[k][n].images()[j], c(i, k));
      }
      li.emplace_back(res_.terms[n + 2], res_.terms[n], std::move(images));
    }
    lifts.push_back(std::move(li));
  }
  lifts_ = std::move(lifts);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      Vec e(m);
      e[j] = f.one();
      Vec v = compose(Vec{f.one()}, lifts_[i][0]);
      if (restrict_values(v, 2, e) != (i == j ? f.one() : f.zero()))
        throw Error(ErrorCode::NormalizationFailure, "normalized generators do not restrict to the coordinate lines");
    }
}

void CohomologyRing::check_dictionary() const {
  const Field& f = ctx().field();
  for (std::size_t d = 1; 2 * d <= res_.length(); ++d) {
    auto mons = monomials(ctx().m(), static_cast<std::uint32_t>(d));
    const std::size_t expected = trivial_generators(2 * d).size();
    Matrix rows(0, res_.term(2 * d).summands());
    for (auto& e : mons) rows.append_row(monomial(e).values);
    if (mons.size() != expected || linalg::rank(f, rows) != expected)
      throw Error(ErrorCode::NormalizationFailure,
                  "monomials of degree " + std::to_string(d) + " do not form a basis of Ext^" + std::to_string(2 * d));
  }
}

Vec CohomologyRing::compose(const Vec& phi, const ProjMap& y) const {
  const Field& f = ctx().field();
  const Projective& src = y.source();
  const Projective& dst = y.target();
  Vec out(src.summands());
  for (std::size_t j = 0; j < src.summands(); ++j) {
    if (src.top(j) != 0) continue;
    FieldElem s = f.zero();
    for (std::size_t jp = 0; jp < dst.summands(); ++jp)
      if (phi[jp].code && dst.top(jp) == 0) s = f.add(s, f.mul(phi[jp], y.images()[j][dst.index(jp, 0)]));
    out[j] = s;
  }
  return out;
}

Cocycle CohomologyRing::monomial(const Exponent& e) const {
  const Field& f = ctx().field();
  std::size_t d = 0;
  for (auto x : e) d += x;
  if (2 * d > res_.length())
    throw Error(ErrorCode::OutOfRange, "degree " + std::to_string(2 * d) + " exceeds the computed resolution");
  Cocycle c;
  c.degree = 0;
  c.values = Vec{f.one()};
  c.poly.vars = ctx().m();
  c.poly.terms[e] = f.one();
  // multiply by one variable at a time, smallest index first
  for (std::uint32_t i = 0; i < ctx().m(); ++i)
    for (std::uint32_t k = 0; k < e[i]; ++k) {
      c.values = compose(c.values, lifts_[i][c.degree]);
      c.degree += 2;
    }
  return c;
}

Cocycle CohomologyRing::cocycle(const Poly& p) const {
  const Field& f = ctx().field();
  if (p.vars != ctx().m()) throw Error(ErrorCode::InvalidArgument, "polynomial has the wrong number of variables");
  const std::uint32_t d = p.degree();
  if (2 * d > res_.length())
    throw Error(ErrorCode::OutOfRange, "degree " + std::to_string(2 * d) + " exceeds the computed resolution");
  Cocycle out;
  out.degree = 2 * d;
  out.poly = p;
  out.values = Vec(res_.term(2 * d).summands());
  for (auto& [e, c] : p.terms) f.axpy(out.values, monomial(e).values, c);
  return out;
}

FieldElem CohomologyRing::restrict_values(const Vec& values, std::size_t degree,
                                          std::span<const FieldElem> lambda) const {
  const Field& f = ctx().field();
  if (lambda.size() != ctx().m()) throw Error(ErrorCode::OutOfRange, "point has wrong length");
  if (linalg::is_zero_vec(lambda)) throw Error(ErrorCode::ZeroPoint, "the zero vector is not a projective point");
  if (degree > res_.length()) throw Error(ErrorCode::OutOfRange, "degree exceeds the computed resolution");
  // chain map from the periodic resolution of k over k[t]/(t^ell), t -> tau
  Vec x(res_.term(0).dim());
  x[res_.term(0).index(0, 0)] = f.one();
  for (std::size_t j = 1; j <= degree; ++j) {
    const std::uint32_t e = j % 2 ? 1 : ctx().ell() - 1;
    const Projective& prev = res_.term(j - 1);
    Vec rhs = x;
    for (std::uint32_t k = 0; k < e; ++k) rhs = prev.apply_tau(lambda, rhs);
    auto sol = linalg::Solver(f, res_.dense[j]).solve(rhs);
    if (!sol) throw Error(ErrorCode::InvariantViolation, "restricted resolution is not exact");
    x = std::move(*sol);
  }
  const Projective& top = res_.term(degree);
  FieldElem c = f.zero();
  for (std::size_t j = 0; j < top.summands(); ++j)
    if (values[j].code && top.top(j) == 0) c = f.add(c, f.mul(values[j], x[top.index(j, 0)]));
  return c;
}

FieldElem CohomologyRing::restrict_class(const Cocycle& zeta, std::span<const FieldElem> lambda) const {
  if (zeta.degree % 2) throw Error(ErrorCode::InvalidArgument, "restriction is defined for even degrees");
  return restrict_values(zeta.values, zeta.degree, lambda);
}

// ---- modules over the ring

GradedHModule h_module(const CohomologyRing& ring, const AModule& n, std::size_t n_max) {
  if (n_max > ring.n_max())
    throw Error(ErrorCode::OutOfRange, "Ext degree " + std::to_string(n_max) + " exceeds the computed resolution");
  const Field& f = n.field();
  HomComplex hc(ring.resolution(), n);
  ExtData ext = ext_groups(hc, n_max);
  GradedHModule out;
  out.dims = ext.dims();
  const std::uint32_t m = ring.ctx().m();
  out.actions.assign(m, {});
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::size_t deg = 0; deg + 2 <= n_max; ++deg) {
      const auto& from = ext.groups[deg];
      const auto& to = ext.groups[deg + 2];
      Matrix a(to.dim(), from.dim());
      if (from.dim() && to.dim()) {
        Matrix pre = hc.precompose(ring.y_lift(i, deg));
        for (std::size_t c = 0; c < from.dim(); ++c) {
          Vec img = linalg::apply(f, pre, from.representatives().row_vec(c));
          Vec co = to.coords(img);
          for (std::size_t r = 0; r < to.dim(); ++r) a(r, c) = co[r];
        }
      }
      out.actions[i].push_back(std::move(a));
    }
  return out;
}

std::vector<Poly> annihilator(const CohomologyRing& ring, const GradedHModule& h, std::uint32_t d, std::size_t n_lim) {
  const Field& f = ring.ctx().field();
  const std::uint32_t m = ring.ctx().m();
  auto mons = monomials(m, d);
  Matrix sys(0, mons.size());
  if (n_lim >= h.dims.size()) n_lim = h.dims.size() - 1;
  for (std::size_t n = 0; n + 2 * d <= n_lim; ++n) {
    const std::size_t dn = h.dims[n];
    if (!dn) continue;
    // action of each monomial Ext^n -> Ext^{n+2d}, built up one variable at a time
    std::map<Exponent, Matrix> act;
    act[Exponent(m, 0)] = Matrix::identity(f, dn);
    for (std::uint32_t k = 1; k <= d; ++k)
      for (auto& e : monomials(m, k)) {
        std::uint32_t i = 0;
        while (!e[i]) ++i;
        Exponent prev = e;
        --prev[i];
        act[e] = linalg::multiply(f, h.actions[i][n + 2 * (k - 1)], act.at(prev));
      }
    const std::size_t dt = h.dims[n + 2 * d];
    for (std::size_t r = 0; r < dt; ++r)
      for (std::size_t c = 0; c < dn; ++c) {
        Vec row(mons.size());
        for (std::size_t k = 0; k < mons.size(); ++k) row[k] = act.at(mons[k])(r, c);
        if (!linalg::is_zero_vec(row)) sys.append_row(row);
      }
  }
  Matrix null = linalg::nullspace(f, sys);
  std::vector<Poly> out;
  for (std::size_t r = 0; r < null.rows(); ++r) {
    Poly p;
    p.vars = m;
    for (std::size_t k = 0; k < mons.size(); ++k)
      if (null(r, k).code) p.terms[mons[k]] = null(r, k);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> annihilator_zeros(const CohomologyRing& ring, const GradedHModule& h, std::size_t n_lim,
                                     std::uint32_t d_max) {
  const Field& f = ring.ctx().field();
  std::vector<Poly> ideal;
  for (std::uint32_t d = 0; d <= d_max; ++d)
    for (auto& p : annihilator(ring, h, d, n_lim)) ideal.push_back(std::move(p));
  std::vector<Point> out;
  for (auto& pt : rational_points(f, ring.ctx().m())) {
    bool zero = true;
    for (auto& p : ideal)
      if (evaluate(f, p, pt).code) {
        zero = false;
        break;
      }
    if (zero) out.push_back(pt);
  }
  return out;
}

SupportVariety support_variety(const CohomologyRing& ring, const AModule& m, std::size_t n_max, std::uint32_t d_max) {
  const AlgebraCtx& ctx = ring.ctx();
  const Field& f = ctx.field();
  if (m.ctx_ptr() != ring.ctx_ptr()) throw Error(ErrorCode::ContextMismatch, "module uses a different algebra");
  if (n_max < 2 || d_max < 1) throw Error(ErrorCode::InvalidArgument, "need n_max >= 2 and d_max >= 1");
  ProjectiveSplit split = split_projective(m);
  SupportVariety out;
  out.betti.assign(n_max + 1, 0);
  out.betti[0] = split.projective_tops.size();
  std::vector<Point> coarse;
  if (split.stable.dim() > 0) {
    // Ext(S_chi, M) = Ext(k, S_{-chi} (x) M)
    for (Packed chi = 0; chi < ctx.lambda_dim(); ++chi) {
      GradedHModule h = h_module(ring, twist(split.stable, ctx.weight_neg(chi)), n_max);
      for (std::size_t n = 0; n <= n_max; ++n) out.betti[n] += h.dims[n];
      auto fine = annihilator_zeros(ring, h, n_max, d_max);
      auto rough = annihilator_zeros(ring, h, n_max - 2, d_max - 1);
      out.points.insert(out.points.end(), fine.begin(), fine.end());
      coarse.insert(coarse.end(), rough.begin(), rough.end());
    }
  }
  sort_points(f, out.points);
  sort_points(f, coarse);
  out.stabilized = out.points == coarse;
  return out;
}

AModule carlson_module(const CohomologyRing& ring, const Cocycle& zeta) {
  const Field& f = ring.ctx().field();
  const Resolution& res = ring.resolution();
  if (zeta.degree % 2 || zeta.degree == 0)
    throw Error(ErrorCode::InvalidArgument, "Carlson modules need a class of positive even degree");
  if (zeta.degree > res.length()) throw Error(ErrorCode::OutOfRange, "degree exceeds the computed resolution");
  const Projective& p = res.term(zeta.degree);
  const Projective& below = res.term(zeta.degree - 1);
  std::optional<std::size_t> pivot;
  for (std::size_t j = 0; j < p.summands(); ++j)
    if (p.top(j) == 0 && zeta.values[j].code) {
      pivot = j;
      break;
    }
  if (!pivot) throw Error(ErrorCode::ZeroCocycle, "the class is zero");
  const Matrix& d = res.dense[zeta.degree];
  linalg::Subspace image(f, below.dim());
  std::size_t omega_dim = 0;
  {
    linalg::Subspace full(f, below.dim());
    for (std::size_t c = 0; c < p.dim(); ++c) full.insert(d.col_vec(c));
    omega_dim = full.dim();
  }
  const std::size_t pi = p.index(*pivot, 0);
  const FieldElem inv = f.inv(zeta.values[*pivot]);
  for (std::size_t idx = 0; idx < p.dim(); ++idx) {
    const std::size_t j = p.summand_of(idx);
    if (idx == pi) continue;
    Vec v = d.col_vec(idx);
    if (p.mono_of(idx) == 0 && p.top(j) == 0 && zeta.values[j].code)
      f.axpy(v, d.col_vec(pi), f.neg(f.mul(zeta.values[j], inv)));
    image.insert(v);
  }
  if (image.dim() + 1 != omega_dim)
    throw Error(ErrorCode::InvariantViolation, "kernel of the class has the wrong dimension");
  return module_from_subspace(
      ring.ctx_ptr(), image, [&](std::uint32_t i, std::span<const FieldElem> v) { return below.apply_x(i, v); },
      [&](std::uint32_t i, std::span<const FieldElem> v) { return below.apply_g(i, v); });
}

}  // namespace qea
