#pragma once

// Modules over the truncated polynomial algebra generated by the X_i, studied
// through induction to A.

#include <memory>
#include <vector>

#include "qea/cohom.hpp"

namespace qea {

LambdaModule lambda_trivial(std::shared_ptr<const AlgebraCtx> ctx);
LambdaModule lambda_regular(std::shared_ptr<const AlgebraCtx> ctx);
LambdaModule lambda_direct_sum(const LambdaModule& a, const LambdaModule& b);
// M / (submodule generated by the given vectors).
LambdaModule lambda_quotient(const LambdaModule& m, const std::vector<Vec>& generators);
// Quotient of a free module of rank 1 or 2 by a few random vectors.
LambdaModule random_lambda_module(std::shared_ptr<const AlgebraCtx> ctx, Rng& rng);

std::vector<Matrix> lambda_hom_space(const LambdaModule& m, const LambdaModule& n);
// Dimension of the span of the maps M -> N factoring through a free module.
std::size_t projective_hom_rank(const LambdaModule& m, const LambdaModule& n);

OrbitVariety lambda_rank_variety(const LambdaModule& m);
// Stable Hom from V(lambda) restricted to the X_i into M is nonzero.
bool stable_hom_criterion(const LambdaModule& m, std::span<const FieldElem> lambda);

SupportVariety lambda_support_variety(const CohomologyRing& ring, const LambdaModule& m, std::size_t n_max,
                                      std::uint32_t d_max);

// dim HH^n(k[t]/(t^ell)) for 0 <= n <= n_max from the periodic bimodule
// resolution with differentials alternating between u and v.
std::vector<std::size_t> hochschild_m1_dims(const Field& f, std::uint32_t ell, std::size_t n_max);

}  // namespace qea
