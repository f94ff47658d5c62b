#pragma once

#include <memory>
#include <random>

#include "qea/algebra.hpp"
#include "qea/module.hpp"

namespace testing_support {

inline std::shared_ptr<const qea::AlgebraCtx> algebra(std::uint32_t ell, std::uint32_t m, std::uint32_t p,
                                                      std::uint32_t r = 1) {
  return qea::AlgebraCtx::create(qea::make_field(p, r, ell), m);
}

inline std::shared_ptr<const qea::AlgebraCtx> c1() { return algebra(2, 2, 5); }
inline std::shared_ptr<const qea::AlgebraCtx> c2() { return algebra(3, 2, 7); }
inline std::shared_ptr<const qea::AlgebraCtx> c3() { return algebra(2, 3, 5); }

inline std::vector<qea::FieldElem> ints(const qea::Field& f, std::initializer_list<int> xs) {
  std::vector<qea::FieldElem> v;
  for (int x : xs) v.push_back(f.from_int(x));
  return v;
}

// Hom dimension straight from the Kronecker form of T a_M = a_N T over all
// 2m generators. Does not look at weights.
inline std::size_t brute_hom_dim(const qea::AModule& m, const qea::AModule& n) {
  const qea::Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  qea::Matrix sys(0, dm * dn);
  auto add_gen = [&](const qea::Matrix& am, const qea::Matrix& an) {
    // vec(T am) - vec(an T), T stored row-major: T(r, c) -> r * dm + c
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        qea::Vec row(dm * dn);
        for (std::size_t k = 0; k < dm; ++k) row[r * dm + k] = f.add(row[r * dm + k], am(k, c));
        for (std::size_t k = 0; k < dn; ++k) row[k * dm + c] = f.sub(row[k * dm + c], an(r, k));
        sys.append_row(row);
      }
  };
  for (std::uint32_t i = 0; i < m.ctx().m(); ++i) {
    add_gen(m.x(i), n.x(i));
    add_gen(m.g(i), n.g(i));
  }
  return dm * dn - qea::linalg::rank(f, sys);
}

}  // namespace testing_support
