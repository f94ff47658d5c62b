#include "qea/field.hpp"

#include <algorithm>

#include "qea/error.hpp"

namespace qea {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients over F_p, constant first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// remainder of a modulo b (b nonzero, trimmed)
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::uint64_t v = a[shift + i] + (p - f) * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>(v % p);
    }
    trim(a);
  }
  return a;
}

// Tail digits of the k-th polynomial in lexicographic order, c_0 slowest.
Poly lex_digits(std::uint32_t k, std::uint32_t p, std::uint32_t r) {
  Poly d(r);
  for (std::uint32_t i = r; i-- > 0;) {
    d[i] = k % p;
    k /= p;
  }
  return d;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint32_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t k = 0; k < count; ++k) {
      Poly g = lex_digits(k, p, static_cast<std::uint32_t>(d));
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p, std::uint32_t r) : p_(p), r_(r), order_(1) {
  for (std::uint32_t i = 0; i < r; ++i) {
    powers_.push_back(order_);
    order_ *= p;
  }
  fastmod_m_ = UINT64_C(0xFFFFFFFFFFFFFFFF) / p + 1;
}

std::shared_ptr<const Field> Field::create(std::uint32_t p, std::uint32_t r) {
  if (!qea::is_prime(p) || p >= 65536) throw Error(ErrorCode::NonPrimeModulus, "p must be a prime below 65536");
  if (r == 0) throw Error(ErrorCode::OutOfRange, "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    if (q > (1u << 20)) throw Error(ErrorCode::ResourceBudgetExceeded, "field order above 2^20");
  }
  std::shared_ptr<Field> f(new Field(p, r));
  if (r == 1) {
    f->modulus_ = {0, 1};
    return f;
  }
  std::uint32_t tails = f->order_;
  for (std::uint32_t k = 0; k < tails; ++k) {
    Poly cand = lex_digits(k, p, r);
    cand.push_back(1);
    if (irreducible(cand, p)) {
      f->modulus_ = cand;
      break;
    }
  }
  std::uint32_t n = f->order_;
  f->rank_.resize(n);
  for (std::uint32_t c = 0; c < n; ++c) {
    std::uint32_t rk = 0;
    std::uint32_t code = c;
    for (std::uint32_t i = 0; i < r; ++i) {
      rk = rk * p + code % p;
      code /= p;
    }
    f->rank_[c] = rk;
  }
  if (n <= 1024) {
    f->add_table_.resize(static_cast<std::size_t>(n) * n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) {
        std::uint32_t out = 0, ca = a, cb = b;
        for (std::uint32_t i = 0; i < r; ++i) {
          out += ((ca % p + cb % p) % p) * f->powers_[i];
          ca /= p;
          cb /= p;
        }
        f->add_table_[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(out);
      }
  }
  // primitive element: first in canonical order whose powers cover F^*
  std::vector<std::uint32_t> by_rank(n);
  for (std::uint32_t c = 0; c < n; ++c) by_rank[f->rank_[c]] = c;
  auto factors = prime_factors(n - 1);
  auto slow_pow = [&](FieldElem a, std::uint64_t e) {
    FieldElem acc{1}, base = a;
    while (e) {
      if (e & 1) acc = f->poly_mul(acc, base);
      base = f->poly_mul(base, base);
      e >>= 1;
    }
    return acc;
  };
  for (std::uint32_t rk = 1; rk < n; ++rk) {
    FieldElem g{by_rank[rk]};
    if (g.code == 0) continue;
    bool prim = true;
    for (auto fac : factors)
      if (slow_pow(g, (n - 1) / fac).code == 1) {
        prim = false;
        break;
      }
    if (prim) {
      f->primitive_ = g;
      break;
    }
  }
  f->exp_.resize(n - 1);
  f->log_.assign(n, 0);
  FieldElem cur{1};
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    f->exp_[i] = cur.code;
    f->log_[cur.code] = i;
    cur = f->poly_mul(cur, f->primitive_);
  }
  return f;
}

FieldElem Field::poly_mul(FieldElem a, FieldElem b) const {
  Poly pa = coeffs(a), pb = coeffs(b);
  Poly prod(2 * r_ - 1, 0);
  for (std::uint32_t i = 0; i < r_; ++i)
    for (std::uint32_t j = 0; j < r_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
  Poly rem = poly_rem(prod, modulus_, p_);
  rem.resize(r_, 0);
  return from_coeffs(rem);
}

FieldElem Field::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return {static_cast<std::uint32_t>(m)};
}

FieldElem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != r_) throw Error(ErrorCode::OutOfRange, "coefficient vector has wrong length");
  std::uint32_t code = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    if (c[i] >= p_) throw Error(ErrorCode::OutOfRange, "coefficient not reduced mod p");
    code += c[i] * powers_[i];
  }
  return {code};
}

std::vector<std::uint32_t> Field::coeffs(FieldElem a) const {
  std::vector<std::uint32_t> out(r_);
  std::uint32_t code = a.code;
  for (std::uint32_t i = 0; i < r_; ++i) {
    out[i] = code % p_;
    code /= p_;
  }
  return out;
}

FieldElem Field::add_ext(FieldElem a, FieldElem b) const {
  if (!add_table_.empty()) return {add_table_[static_cast<std::size_t>(a.code) * order_ + b.code]};
  std::uint32_t out = 0, ca = a.code, cb = b.code;
  for (std::uint32_t i = 0; i < r_; ++i) {
    std::uint32_t s = ca % p_ + cb % p_;
    if (s >= p_) s -= p_;
    out += s * powers_[i];
    ca /= p_;
    cb /= p_;
  }
  return {out};
}

FieldElem Field::neg_ext(FieldElem a) const {
  std::uint32_t out = 0, ca = a.code;
  for (std::uint32_t i = 0; i < r_; ++i) {
    std::uint32_t d = ca % p_;
    out += (d == 0 ? 0 : p_ - d) * powers_[i];
    ca /= p_;
  }
  return {out};
}

FieldElem Field::inv(FieldElem a) const {
  if (a.code == 0) throw Error(ErrorCode::OutOfRange, "inverse of zero");
  if (r_ == 1) return {inv_mod(a.code, p_)};
  std::uint32_t l = log_[a.code];
  return {exp_[l == 0 ? 0 : order_ - 1 - l]};
}

FieldElem Field::pow(FieldElem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  FieldElem acc = one();
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

std::uint32_t Field::multiplicative_order(FieldElem a) const {
  if (a.code == 0) return 0;
  std::uint32_t n = order_ - 1;
  for (std::uint32_t d = 1; d <= n; ++d)
    if (n % d == 0 && pow(a, d) == one()) return d;
  return n;
}

void Field::axpy(std::span<FieldElem> dst, std::span<const FieldElem> src, FieldElem f) const {
  if (f.code == 0) return;
  std::size_t n = dst.size();
  if (r_ == 1) {
    std::uint32_t fc = f.code;
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t s = src[j].code;
      if (s) dst[j].code = reduce(dst[j].code + fc * s);
    }
    return;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (src[j].code) dst[j] = add(dst[j], mul(f, src[j]));
}

void Field::scale(std::span<FieldElem> v, FieldElem f) const {
  for (auto& x : v) x = mul(x, f);
}

std::vector<FieldElem> Field::embedding_into(const Field& big) const {
  if (big.p_ != p_ || big.r_ % r_ != 0)
    throw Error(ErrorCode::InvalidArgument, "no embedding between these fields");
  std::vector<FieldElem> out(order_);
  if (r_ == 1) {
    for (std::uint32_t c = 0; c < order_; ++c) out[c] = big.from_int(c);
    return out;
  }
  FieldElem root{0};
  bool found = false;
  for (std::uint32_t c = 0; c < big.order_ && !found; ++c) {
    FieldElem x{c}, acc = big.zero();
    for (std::size_t i = modulus_.size(); i-- > 0;) acc = big.add(big.mul(acc, x), big.from_int(modulus_[i]));
    if (acc == big.zero()) {
      root = x;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::InvalidArgument, "modulus has no root in the larger field");
  for (std::uint32_t c = 0; c < order_; ++c) {
    auto cs = coeffs({c});
    FieldElem acc = big.zero();
    for (std::size_t i = cs.size(); i-- > 0;) acc = big.add(big.mul(acc, root), big.from_int(cs[i]));
    out[c] = acc;
  }
  return out;
}

FieldCtx make_field(std::uint32_t p, std::uint32_t r, std::uint32_t ell) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeModulus, "p = " + std::to_string(p) + " is not prime");
  if (ell < 2) throw Error(ErrorCode::OutOfRange, "ell must be at least 2");
  if (ell % p == 0) throw Error(ErrorCode::CharDividesEll, "characteristic divides ell");
  auto field = Field::create(p, r);
  if ((field->order() - 1) % ell != 0)
    throw Error(ErrorCode::NoRootOfUnity, "ell does not divide p^r - 1");
  std::vector<std::uint32_t> by_rank(field->order());
  for (std::uint32_t c = 0; c < field->order(); ++c) {
    auto cs = field->coeffs({c});
    std::uint32_t rk = 0;
    for (auto d : cs) rk = rk * p + d;
    by_rank[rk] = c;
  }
  for (std::uint32_t rk = 0; rk < field->order(); ++rk) {
    FieldElem x{by_rank[rk]};
    if (x.code != 0 && field->multiplicative_order(x) == ell) return FieldCtx{field, ell, x};
  }
  throw Error(ErrorCode::NoRootOfUnity, "no element of order ell");
}

}  // namespace qea
