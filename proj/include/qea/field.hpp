#pragma once

// Finite fields F_{p^r}. Elements are stored as a code sum c_i p^i, with c_0
// the constant coefficient. Prime fields take a fast path; extensions use
// log/exp tables over a primitive element.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace qea {

struct FieldElem {
  std::uint32_t code = 0;
  constexpr bool operator==(const FieldElem&) const = default;
};

class Field {
 public:
  // The modulus is the first monic irreducible of degree r when tails are
  // ordered lexicographically on (c_0, c_1, ...).
  static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t r);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return r_; }
  std::uint32_t order() const { return order_; }
  bool is_prime() const { return r_ == 1; }
  // Coefficients of the modulus, constant term first, monic. For r = 1 this is x.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(FieldElem a) const;

  FieldElem add(FieldElem a, FieldElem b) const {
    if (r_ == 1) {
      std::uint32_t s = a.code + b.code;
      return {s >= p_ ? s - p_ : s};
    }
    return add_ext(a, b);
  }
  FieldElem neg(FieldElem a) const {
    if (r_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
    return neg_ext(a);
  }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  FieldElem mul(FieldElem a, FieldElem b) const {
    if (r_ == 1) return {reduce(a.code * b.code)};
    if (a.code == 0 || b.code == 0) return {0};
    std::uint32_t e = log_[a.code] + log_[b.code];
    if (e >= order_ - 1) e -= order_ - 1;
    return {exp_[e]};
  }
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::int64_t e) const;

  // Order used for canonical output: lexicographic on (c_0, c_1, ...).
  bool canonical_less(FieldElem a, FieldElem b) const {
    if (r_ == 1) return a.code < b.code;
    return rank_[a.code] < rank_[b.code];
  }
  std::uint32_t multiplicative_order(FieldElem a) const;
  FieldElem primitive_element() const { return primitive_; }

  // dst += f * src
  void axpy(std::span<FieldElem> dst, std::span<const FieldElem> src, FieldElem f) const;
  void scale(std::span<FieldElem> v, FieldElem f) const;

  // Image of every element of this field inside `big`, indexed by code.
  // Requires degree() to divide big.degree() and the same characteristic.
  std::vector<FieldElem> embedding_into(const Field& big) const;

 private:
  Field(std::uint32_t p, std::uint32_t r);
  std::uint32_t reduce(std::uint32_t a) const {
    std::uint64_t low = fastmod_m_ * a;
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(low) * p_) >> 64);
  }
  FieldElem add_ext(FieldElem a, FieldElem b) const;
  FieldElem neg_ext(FieldElem a) const;
  FieldElem poly_mul(FieldElem a, FieldElem b) const;

  std::uint32_t p_;
  std::uint32_t r_;
  std::uint32_t order_;
  std::uint64_t fastmod_m_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> powers_;  // p^i
  FieldElem primitive_{1};
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint16_t> add_table_;
};

// A field together with the chosen primitive ell-th root of unity q.
struct FieldCtx {
  std::shared_ptr<const Field> field;
  std::uint32_t ell = 0;
  FieldElem q;
};

// q is the least element of multiplicative order ell in canonical order.
FieldCtx make_field(std::uint32_t p, std::uint32_t r, std::uint32_t ell);

bool is_prime(std::uint32_t n);

}  // namespace qea
