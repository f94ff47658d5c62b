#pragma once

// Minimal projective resolutions and the Hom complexes Hom_A(P_*, N) used to
// compute Ext.

#include <memory>
#include <span>
#include <vector>

#include "qea/projective.hpp"

namespace qea {

struct Resolution {
  std::shared_ptr<const AlgebraCtx> ctx;
  AModule target;  // in a weight basis
  std::vector<std::shared_ptr<const Projective>> terms;  // P_0 .. P_len, trailing terms may be zero
  std::vector<ProjMap> differentials;  // [n] : P_n -> P_{n-1} for n >= 1; [0] is empty
  Matrix augmentation;                 // target.dim() x P_0.dim()
  std::vector<Matrix> dense;           // [0] = augmentation, [n] = matrix of d_n

  std::size_t length() const { return terms.size() - 1; }
  const Projective& term(std::size_t n) const { return *terms[n]; }
  std::size_t total_dim() const;
};

// Throws ResourceBudgetExceeded when sum dim P_n passes `budget`.
Resolution minimal_resolution(const AModule& m, std::size_t n_max, std::size_t budget = 1u << 20);
// Assembles a resolution from stored generator images and checks it.
Resolution assemble_resolution(const AModule& weighted_target, std::vector<std::vector<Packed>> tops,
                               std::vector<std::vector<Vec>> images);
// Exactness, d^2 = 0 and minimality; throws InvariantViolation.
void verify_resolution(const Resolution& res);

// Rank of a map between weight-graded spaces, block by block.
std::size_t graded_rank(const Field& f, const Matrix& a, const std::vector<Packed>& row_weights,
                        const std::vector<Packed>& col_weights, std::size_t weight_count);

// Hom_A(P_*, N). A cochain in degree n is a tuple (phi_j) with phi_j in the
// weight-w_j part of N, one per summand A e_{w_j} of P_n.
class HomComplex {
 public:
  HomComplex(const Resolution& res, const AModule& n);
  const AModule& module() const { return n_; }
  std::size_t dim(std::size_t deg) const;
  // phi -> phi o f for f : src -> dst given by generator images.
  Matrix precompose(const ProjMap& f) const;
  Matrix coboundary(std::size_t deg) const { return precompose(res_->differentials[deg + 1]); }
  // Weight-basis coordinates in N of the generator images of a cochain.
  std::size_t offset(std::size_t deg, std::size_t summand) const;
  const std::vector<std::size_t>& weight_indices(Packed w) const { return by_weight_[w]; }

 private:
  std::vector<std::size_t> offsets(const Projective& p) const;
  const Resolution* res_;
  AModule n_;
  std::vector<std::vector<std::size_t>> by_weight_;
  std::vector<Matrix> mono_;  // X^c on N
};

// Ext^n_A(M, N) for n <= n_max, with representatives.
struct ExtData {
  std::vector<linalg::QuotientSpace> groups;
  std::vector<std::size_t> dims() const;
};
ExtData ext_groups(const HomComplex& hc, std::size_t n_max);
std::vector<std::size_t> ext_dims(const AModule& m, const AModule& n, std::size_t n_max);

}  // namespace qea
