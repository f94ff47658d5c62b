#pragma once

// Finite-dimensional A-modules as matrices of the generators, and the
// constructions on them: tensor, dual, syzygies, Hom spaces, induction.

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qea/algebra.hpp"
#include "qea/matrix.hpp"

namespace qea {

class AModule {
 public:
  AModule() = default;
  AModule(std::shared_ptr<const AlgebraCtx> ctx, std::vector<Matrix> x, std::vector<Matrix> g);

  const AlgebraCtx& ctx() const { return *ctx_; }
  const std::shared_ptr<const AlgebraCtx>& ctx_ptr() const { return ctx_; }
  const Field& field() const { return ctx_->field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& x(std::uint32_t i) const { return x_[i]; }
  const Matrix& g(std::uint32_t i) const { return g_[i]; }
  const std::vector<Matrix>& xs() const { return x_; }
  const std::vector<Matrix>& gs() const { return g_; }

  Matrix act(const AlgElem& a) const;
  // Throws RelationViolation naming the first relation that fails.
  void validate() const;
  // True when every g_i is diagonal, so the basis consists of weight vectors.
  bool has_weight_basis() const;
  std::vector<Packed> weights() const;

 private:
  std::shared_ptr<const AlgebraCtx> ctx_;
  std::size_t dim_ = 0;
  std::vector<Matrix> x_;
  std::vector<Matrix> g_;
};

// Module over the exterior-like algebra generated by the X_i alone.
class LambdaModule {
 public:
  LambdaModule() = default;
  LambdaModule(std::shared_ptr<const AlgebraCtx> ctx, std::vector<Matrix> x);
  const AlgebraCtx& ctx() const { return *ctx_; }
  const std::shared_ptr<const AlgebraCtx>& ctx_ptr() const { return ctx_; }
  std::size_t dim() const { return dim_; }
  const Matrix& x(std::uint32_t i) const { return x_[i]; }
  const std::vector<Matrix>& xs() const { return x_; }
  void validate() const;

 private:
  std::shared_ptr<const AlgebraCtx> ctx_;
  std::size_t dim_ = 0;
  std::vector<Matrix> x_;
};

struct ModuleMap {
  const AModule* source = nullptr;
  const AModule* target = nullptr;
  Matrix matrix;  // target.dim() x source.dim()
  bool is_homomorphism() const;
};

using Rng = std::mt19937_64;

AModule trivial_module(std::shared_ptr<const AlgebraCtx> ctx);
AModule simple_module(std::shared_ptr<const AlgebraCtx> ctx, Packed chi);
AModule regular_module(std::shared_ptr<const AlgebraCtx> ctx);
// A * tau^{ell-1}, or A * tau when primed.
AModule v_module(std::shared_ptr<const AlgebraCtx> ctx, std::span<const FieldElem> lambda, bool primed);
AModule direct_sum(const AModule& a, const AModule& b);
AModule tensor(const AModule& a, const AModule& b);
AModule dual(const AModule& a);
// S_chi (x) M
AModule twist(const AModule& a, Packed chi);
Matrix restrict_to_tau(const AModule& a, std::span<const FieldElem> lambda);
AModule induce_from_lambda(std::shared_ptr<const AlgebraCtx> ctx, const LambdaModule& n);
LambdaModule restrict_to_lambda(const AModule& a);

// Basis of Hom_A(M, N); each element is N.dim() x M.dim().
std::vector<Matrix> hom_space(const AModule& m, const AModule& n);
bool is_projective(const AModule& a);
AModule omega(const AModule& a);
AModule omega_inverse(const AModule& a);
AModule omega_power(const AModule& a, int i);
std::optional<Matrix> find_isomorphism(const AModule& m, const AModule& n, std::size_t trials, Rng& rng);
bool is_isomorphic(const AModule& m, const AModule& n, std::size_t trials, Rng& rng);

// Same module in a basis of simultaneous g-eigenvectors.
struct WeightForm {
  AModule module;
  Matrix basis;    // columns: new basis vectors in old coordinates
  Matrix inverse;  // old coordinates -> new
  bool identity = false;
};
WeightForm weight_form(const AModule& a);
AModule to_weight_basis(const AModule& a);

// M = stable (+) sum of A e_w over `projective_tops`.
struct ProjectiveSplit {
  AModule stable;
  std::vector<Packed> projective_tops;
};
ProjectiveSplit split_projective(const AModule& a);

// For a module with a weight basis: the submodule generated by weight vectors
// and the corresponding quotient.
struct SubQuotient {
  AModule sub;
  AModule quotient;
};
SubQuotient generated_submodule(const AModule& a, const std::vector<Vec>& generators);

// Builds the module spanned by the rows of an echelon subspace of some
// ambient space, given the ambient action of X_i and g_i.
using AmbientAction = std::function<Vec(std::uint32_t, std::span<const FieldElem>)>;
AModule module_from_subspace(std::shared_ptr<const AlgebraCtx> ctx, const linalg::Subspace& s, const AmbientAction& act_x,
                             const AmbientAction& act_g);

FieldElem random_elem(const Field& f, Rng& rng);
// P / U with P a sum of one or two A e_w and U generated by up to two random
// weight vectors.
AModule random_module(std::shared_ptr<const AlgebraCtx> ctx, Rng& rng);
Vec random_vec(const Field& f, std::size_t n, Rng& rng);
std::vector<FieldElem> random_point(const Field& f, std::uint32_t m, Rng& rng);

}  // namespace qea
