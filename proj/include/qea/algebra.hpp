#pragma once

// The algebra A generated by X_1..X_m and g_1..g_m with X_i^ell = 0,
// g_i^ell = 1, X's and g's commuting among themselves and
// g_i X_j = q^{[i=j]} X_j g_i. Basis X^a g^b, indexed a + ell^m * b.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qea/field.hpp"

namespace qea {

// Exponent vectors in [0, ell)^m are packed mixed radix, coordinate 0 least
// significant. The same packing serves monomials X^a, group elements g^b and
// characters (weights).
using Packed = std::uint32_t;

struct Character {
  std::vector<std::uint32_t> exponents;  // chi(g_i) = q^{exponents[i]}
};

class AlgebraCtx {
 public:
  static std::shared_ptr<const AlgebraCtx> create(FieldCtx fctx, std::uint32_t m);

  const FieldCtx& field_ctx() const { return fctx_; }
  const Field& field() const { return *fctx_.field; }
  std::uint32_t m() const { return m_; }
  std::uint32_t ell() const { return fctx_.ell; }
  std::size_t lambda_dim() const { return lambda_dim_; }  // ell^m
  std::size_t dim() const { return lambda_dim_ * lambda_dim_; }

  std::uint32_t digit(Packed x, std::uint32_t i) const { return (x / radix_[i]) % fctx_.ell; }
  std::vector<std::uint32_t> digits(Packed x) const;
  Packed pack(std::span<const std::uint32_t> d) const;
  Packed unit(std::uint32_t i) const { return radix_[i]; }
  std::uint32_t total_degree(Packed x) const;

  Packed weight_add(Packed a, Packed b) const { return add_[a * lambda_dim_ + b]; }
  Packed weight_neg(Packed a) const;
  Packed weight_sub(Packed a, Packed b) const { return weight_add(a, weight_neg(b)); }
  // X^a X^b, or nothing when some exponent reaches ell.
  std::optional<Packed> mono_mul(Packed a, Packed b) const {
    std::int32_t v = mono_[a * lambda_dim_ + b];
    if (v < 0) return std::nullopt;
    return static_cast<Packed>(v);
  }
  // sum_i b_i c_i mod ell
  std::uint32_t pairing(Packed b, Packed c) const { return pair_[b * lambda_dim_ + c]; }
  FieldElem q_pow(std::int64_t e) const;
  FieldElem char_value(Packed chi, Packed g) const { return q_powers_[pairing(chi, g)]; }
  Packed character(const Character& chi) const;

  std::size_t basis_index(Packed mono, Packed group) const { return mono + lambda_dim_ * group; }
  Packed basis_mono(std::size_t idx) const { return static_cast<Packed>(idx % lambda_dim_); }
  Packed basis_group(std::size_t idx) const { return static_cast<Packed>(idx / lambda_dim_); }
  // (X^a g^b)(X^c g^d) = q^{b.c} X^{a+c} g^{b+d}
  std::optional<std::pair<std::size_t, FieldElem>> basis_product(std::size_t i, std::size_t j) const;
  // Discrete log base q of an ell-th root of unity; nothing if x is not one.
  std::optional<std::uint32_t> q_log(FieldElem x) const;

 private:
  AlgebraCtx(FieldCtx fctx, std::uint32_t m);
  FieldCtx fctx_;
  std::uint32_t m_;
  std::size_t lambda_dim_;
  std::vector<std::uint32_t> radix_;
  std::vector<Packed> add_;
  std::vector<std::int32_t> mono_;
  std::vector<std::uint8_t> pair_;
  std::vector<FieldElem> q_powers_;
};

// Sparse element of A. Holds a raw pointer to its context, which must outlive it.
class AlgElem {
 public:
  explicit AlgElem(const AlgebraCtx& ctx) : ctx_(&ctx) {}
  static AlgElem basis(const AlgebraCtx& ctx, std::size_t idx, FieldElem c);

  const AlgebraCtx& ctx() const { return *ctx_; }
  const std::map<std::size_t, FieldElem>& terms() const { return terms_; }
  FieldElem coeff(std::size_t idx) const;
  void add_term(std::size_t idx, FieldElem c);
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const AlgElem& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

 private:
  const AlgebraCtx* ctx_;
  std::map<std::size_t, FieldElem> terms_;
};

AlgElem add(const AlgElem& x, const AlgElem& y);
AlgElem scale(FieldElem c, const AlgElem& x);
AlgElem multiply(const AlgElem& x, const AlgElem& y);
AlgElem power(const AlgElem& x, std::uint32_t n);

AlgElem one(const AlgebraCtx& ctx);
AlgElem gen_x(const AlgebraCtx& ctx, std::uint32_t i);
AlgElem gen_g(const AlgebraCtx& ctx, std::uint32_t i);
AlgElem group_elem(const AlgebraCtx& ctx, Packed b);
// h_1 = 1, h_j = g_1 ... g_{j-1}
AlgElem twist_elem(const AlgebraCtx& ctx, std::uint32_t j);

// Elements of A (x) A, keyed by pairs of basis indices.
class TensorElem {
 public:
  explicit TensorElem(const AlgebraCtx& ctx) : ctx_(&ctx) {}
  const AlgebraCtx& ctx() const { return *ctx_; }
  const std::map<std::pair<std::size_t, std::size_t>, FieldElem>& terms() const { return terms_; }
  void add_term(std::size_t i, std::size_t j, FieldElem c);
  bool operator==(const TensorElem& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

 private:
  const AlgebraCtx* ctx_;
  std::map<std::pair<std::size_t, std::size_t>, FieldElem> terms_;
};

TensorElem tensor_multiply(const TensorElem& x, const TensorElem& y);

struct HopfImage {
  TensorElem coproduct;
  FieldElem counit;
  AlgElem antipode;
};

TensorElem coproduct(const AlgElem& x);
FieldElem counit(const AlgElem& x);
AlgElem antipode(const AlgElem& x);
HopfImage hopf_maps(const AlgElem& x);

// sum_i lambda_i X_i h_i; throws ZeroPoint on the zero vector.
AlgElem tau(const AlgebraCtx& ctx, std::span<const FieldElem> lambda);

// Product of q-binomials; a shortfall sum(s) < n is treated as one more part.
FieldElem q_multinomial(const FieldCtx& fctx, std::uint32_t n, std::span<const std::uint32_t> s);

// e_chi = |G|^{-1} sum_g chi(g)^{-1} g
AlgElem idempotent(const AlgebraCtx& ctx, Packed chi);

}  // namespace qea
