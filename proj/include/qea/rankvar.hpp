#pragma once

// Rank varieties over the rational points of P^{m-1}. Points are normalized
// so the first nonzero coordinate is 1 and compared lexicographically in the
// field's canonical order.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "qea/module.hpp"

namespace qea {

using Point = Vec;

Point normalize_point(const Field& f, std::span<const FieldElem> v);
bool point_less(const Field& f, const Point& a, const Point& b);
void sort_points(const Field& f, std::vector<Point>& pts);
// All normalized points of P^{m-1}(F), sorted.
std::vector<Point> rational_points(const Field& f, std::uint32_t m);

// Orbit under lambda_i -> q^{a_i} lambda_i, sorted.
std::vector<Point> orbit_of(const AlgebraCtx& ctx, std::span<const FieldElem> lambda);
Point orbit_rep(const AlgebraCtx& ctx, std::span<const FieldElem> lambda);

// The restriction of M to k<tau_lambda> is not free.
bool membership(const AModule& m, std::span<const FieldElem> lambda);

struct OrbitVariety {
  std::vector<Point> orbit_reps;
  std::vector<Point> points;  // union of the orbits
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  bool empty() const { return orbit_reps.empty(); }
};

// Evaluates `member` at every rational point; throws InvariantViolation when
// it is not constant on G-orbits.
OrbitVariety orbit_variety(const AlgebraCtx& ctx, const std::function<bool(const Point&)>& member);
OrbitVariety rank_variety(const AModule& m);

Point psi(const AlgebraCtx& ctx, std::span<const FieldElem> lambda);
std::vector<Point> psi_image(const AlgebraCtx& ctx, const std::vector<Point>& pts);

// The same algebra over F_{Q^ell}, where every element of F_Q has an ell-th
// root. q is carried over through the embedding.
struct RootExtension {
  std::shared_ptr<const AlgebraCtx> big;
  std::vector<FieldElem> embed;  // indexed by code in the small field
  std::vector<FieldElem> root;   // some ell-th root of embed[x]
};
RootExtension root_extension(const AlgebraCtx& small);
AModule extend_scalars(const AModule& m, const RootExtension& ext);

// Rational points y whose ell-th root preimages lie in the rank variety of M
// over F_{Q^ell}. Contains psi_image(rank_variety(M).points).
std::vector<Point> psi_closure(const AModule& m, const RootExtension& ext);

}  // namespace qea
