#pragma once

// Projective modules written as sums of indecomposables A e_w. The basis of
// a summand is X^c e_w (weight w + c), stored summand-major.

#include <memory>
#include <span>
#include <vector>

#include "qea/module.hpp"

namespace qea {

class Projective {
 public:
  Projective() = default;
  Projective(std::shared_ptr<const AlgebraCtx> ctx, std::vector<Packed> tops);

  const AlgebraCtx& ctx() const { return *ctx_; }
  const std::shared_ptr<const AlgebraCtx>& ctx_ptr() const { return ctx_; }
  std::size_t summands() const { return tops_.size(); }
  std::size_t dim() const { return tops_.size() * ctx_->lambda_dim(); }
  Packed top(std::size_t j) const { return tops_[j]; }
  const std::vector<Packed>& tops() const { return tops_; }
  std::size_t index(std::size_t j, Packed mono) const { return j * ctx_->lambda_dim() + mono; }
  std::size_t summand_of(std::size_t idx) const { return idx / ctx_->lambda_dim(); }
  Packed mono_of(std::size_t idx) const { return static_cast<Packed>(idx % ctx_->lambda_dim()); }
  Packed weight_at(std::size_t idx) const { return ctx_->weight_add(tops_[summand_of(idx)], mono_of(idx)); }
  const std::vector<std::size_t>& weight_indices(Packed w) const { return by_weight_[w]; }
  std::vector<Packed> weights() const;

  Vec apply_mono(Packed c, std::span<const FieldElem> v) const;
  Vec apply_x(std::uint32_t i, std::span<const FieldElem> v) const { return apply_mono(ctx_->unit(i), v); }
  Vec apply_g(std::uint32_t i, std::span<const FieldElem> v) const;
  // Action of sum_i lambda_i X_i h_i.
  Vec apply_tau(std::span<const FieldElem> lambda, std::span<const FieldElem> v) const;
  AModule as_module() const;

 private:
  std::shared_ptr<const AlgebraCtx> ctx_;
  std::vector<Packed> tops_;
  std::vector<std::vector<std::size_t>> by_weight_;
};

// An A-linear map out of a projective, recorded by the images of its
// generators (vectors in the target space).
class ProjMap {
 public:
  ProjMap() = default;
  ProjMap(std::shared_ptr<const Projective> source, std::shared_ptr<const Projective> target, std::vector<Vec> images);

  const std::vector<Vec>& images() const { return images_; }
  Vec apply(std::span<const FieldElem> x) const;
  Matrix to_matrix() const;
  const Projective& source() const { return *src_; }
  const Projective& target() const { return *tgt_; }
  const std::shared_ptr<const Projective>& source_ptr() const { return src_; }
  const std::shared_ptr<const Projective>& target_ptr() const { return tgt_; }
  // Nonzero entries of each image as (target index, coefficient).
  const std::vector<std::vector<std::pair<std::size_t, FieldElem>>>& sparse() const { return sparse_; }

 private:
  std::shared_ptr<const Projective> src_;
  std::shared_ptr<const Projective> tgt_;
  std::vector<Vec> images_;
  std::vector<std::vector<std::pair<std::size_t, FieldElem>>> sparse_;
};

// Projective cover of a module with a weight basis: the cover and, for each
// summand, the generator it maps to.
struct Cover {
  Projective projective;
  std::vector<Vec> generators;
};
Cover projective_cover(const AModule& weighted);

// Images X^c v for all monomials c, as the columns of the map P -> M.
Matrix cover_matrix(const AModule& weighted, const Cover& cover);

}  // namespace qea
