#pragma once

// The cohomology ring H*(A, k) = k[y_1..y_m] realized on the minimal
// resolution of k, its action on Ext(k, N), annihilators, support varieties
// and Carlson modules.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qea/rankvar.hpp"
#include "qea/resolution.hpp"

namespace qea {

using Exponent = std::vector<std::uint32_t>;

// Homogeneous polynomial in y_1..y_m.
struct Poly {
  std::uint32_t vars = 0;
  std::map<Exponent, FieldElem> terms;  // nonzero coefficients only

  bool is_zero() const { return terms.empty(); }
  // Throws InvalidArgument when not homogeneous.
  std::uint32_t degree() const;
};

// "y1", "y1+2*y2", "y1^2 - y1*y2", "3". Throws RecipeParse.
Poly parse_poly(const Field& f, std::uint32_t m, const std::string& text);
std::string format_poly(const Field& f, const Poly& p);
FieldElem evaluate(const Field& f, const Poly& p, std::span<const FieldElem> point);
// Degree-d monomials, y_1^d first, then in decreasing lexicographic order.
std::vector<Exponent> monomials(std::uint32_t m, std::uint32_t d);

// A class in Ext^{degree}(k, k) given by its values on the generators of
// P_degree (zero on generators of non-trivial weight).
struct Cocycle {
  std::size_t degree = 0;
  Poly poly;
  Vec values;
};

class CohomologyRing {
 public:
  // Resolves k far enough for Ext up to n_max and lifts the y_i.
  static std::shared_ptr<const CohomologyRing> build(std::shared_ptr<const AlgebraCtx> ctx, std::size_t n_max,
                                                     std::size_t budget = 1u << 20);
  // From an already computed resolution of k (for instance a cached one).
  static std::shared_ptr<const CohomologyRing> from_resolution(Resolution res);

  const AlgebraCtx& ctx() const { return *res_.ctx; }
  const std::shared_ptr<const AlgebraCtx>& ctx_ptr() const { return res_.ctx; }
  const Resolution& resolution() const { return res_; }
  // Largest n for which Ext^n(k, N) can be computed.
  std::size_t n_max() const { return res_.length() - 1; }
  // Chain lift of y_i : P_{n+2} -> P_n, for n + 2 <= length.
  const ProjMap& y_lift(std::uint32_t i, std::size_t n) const { return lifts_[i][n]; }
  std::size_t lift_count() const { return lifts_.empty() ? 0 : lifts_[0].size(); }

  // Trivial-weight generators of P_n.
  std::vector<std::size_t> trivial_generators(std::size_t n) const;
  // phi o Y for a functional phi on P_n and a lift Y : P_{n+2} -> P_n.
  Vec compose(const Vec& phi, const ProjMap& y) const;
  Cocycle cocycle(const Poly& p) const;
  Cocycle monomial(const Exponent& e) const;
  // Scalar c with tau_lambda^*(zeta) = c y^n in the cohomology of k[t]/(t^ell).
  FieldElem restrict_class(const Cocycle& zeta, std::span<const FieldElem> lambda) const;
  FieldElem restrict_values(const Vec& values, std::size_t degree, std::span<const FieldElem> lambda) const;

 private:
  explicit CohomologyRing(Resolution res);
  void lift_basis();
  void normalize();
  void check_dictionary() const;
  // Lift of the degree-2 class with the given values through the resolution.
  std::vector<ProjMap> lift_class(const Vec& values) const;

  Resolution res_;
  std::vector<std::vector<ProjMap>> lifts_;  // [i][n]
};

// Ext^n(k, N) for n <= n_max with the action of each y_i.
struct GradedHModule {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Matrix>> actions;  // [i][n] : Ext^n -> Ext^{n+2}
};
GradedHModule h_module(const CohomologyRing& ring, const AModule& n, std::size_t n_max);

// Homogeneous polynomials of degree d killing Ext^n for n <= n_lim - 2d.
std::vector<Poly> annihilator(const CohomologyRing& ring, const GradedHModule& h, std::uint32_t d, std::size_t n_lim);
// Rational points where every polynomial of degree <= d_max in the truncated
// annihilator vanishes.
std::vector<Point> annihilator_zeros(const CohomologyRing& ring, const GradedHModule& h, std::size_t n_lim,
                                     std::uint32_t d_max);

struct SupportVariety {
  std::vector<Point> points;
  bool stabilized = false;
  std::vector<std::size_t> betti;  // sum over simples S of dim Ext^n(S, M)
};
SupportVariety support_variety(const CohomologyRing& ring, const AModule& m, std::size_t n_max, std::uint32_t d_max);

// L_zeta inside P_{2n-1}. Throws ZeroCocycle, InvalidArgument for odd degree.
AModule carlson_module(const CohomologyRing& ring, const Cocycle& zeta);

}  // namespace qea
