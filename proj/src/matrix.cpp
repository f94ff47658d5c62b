#include "qea/matrix.hpp"

#include <utility>

#include "qea/error.hpp"

namespace qea {

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::diagonal(std::span<const FieldElem> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Vec Matrix::col_vec(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, std::span<const FieldElem> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

void Matrix::append_row(std::span<const FieldElem> v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw Error(ErrorCode::InvalidArgument, "row length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

bool Matrix::is_zero() const {
  for (auto x : data_)
    if (x.code) return false;
  return true;
}

bool Matrix::is_diagonal() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j).code) return false;
  return true;
}

namespace linalg {

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not compose");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      FieldElem x = a(i, k);
      if (x.code) f.axpy(c.row(i), b.row(k), x);
    }
  return c;
}

Vec apply(const Field& f, const Matrix& a, std::span<const FieldElem> v) {
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    FieldElem acc = f.zero();
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (r[j].code && v[j].code) acc = f.add(acc, f.mul(r[j], v[j]));
    out[i] = acc;
  }
  return out;
}

Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) f.axpy(c.row(i), b.row(i), f.one());
  return c;
}

Matrix sub(const Field& f, const Matrix& a, const Matrix& b) {
  Matrix c = a;
  FieldElem m1 = f.neg(f.one());
  for (std::size_t i = 0; i < a.rows(); ++i) f.axpy(c.row(i), b.row(i), m1);
  return c;
}

Matrix scale(const Field& f, const Matrix& a, FieldElem s) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) f.scale(c.row(i), s);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix kron(const Field& f, const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      FieldElem x = a(i, j);
      if (!x.code) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = f.mul(x, b(r, s));
    }
  return k;
}

Matrix power(const Field& f, const Matrix& a, std::size_t k) {
  Matrix acc = Matrix::identity(f, a.rows());
  for (std::size_t i = 0; i < k; ++i) acc = multiply(f, acc, a);
  return acc;
}

Matrix submatrix(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

bool is_zero_vec(std::span<const FieldElem> v) {
  for (auto x : v)
    if (x.code) return false;
  return true;
}

namespace {

// Row reduces `a` in place using pivots among the first `pivot_cols` columns.
// Pivot rows end up first, in pivot order.
std::vector<std::size_t> eliminate(const Field& f, Matrix& a, std::size_t pivot_cols, bool full) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < pivot_cols && r < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = r; i < n; ++i)
      if (a(i, col).code) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    FieldElem inv = f.inv(a(r, col));
    auto prow = a.row(r).subspan(col);
    f.scale(prow, inv);
    for (std::size_t i = full ? 0 : r + 1; i < n; ++i) {
      if (i == r) continue;
      FieldElem x = a(i, col);
      if (x.code) f.axpy(a.row(i).subspan(col), prow, f.neg(x));
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon rref(const Field& f, Matrix a) {
  auto pivots = eliminate(f, a, a.cols(), true);
  Matrix rows(pivots.size(), a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) rows(i, j) = a(i, j);
  return {std::move(rows), std::move(pivots)};
}

std::size_t rank(const Field& f, Matrix a) { return eliminate(f, a, a.cols(), false).size(); }

Matrix nullspace(const Field& f, const Matrix& a) {
  Echelon e = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix n(free.size(), a.cols());
  for (std::size_t k = 0; k < free.size(); ++k) {
    n(k, free[k]) = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) n(k, e.pivots[i]) = f.neg(e.rows(i, free[k]));
  }
  return n;
}

Matrix inverse(const Field& f, const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  auto pivots = eliminate(f, aug, n, true);
  if (pivots.size() != n) throw Error(ErrorCode::InvalidArgument, "matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::optional<Vec> solve(const Field& f, const Matrix& a, std::span<const FieldElem> b) {
  return Solver(f, a).solve(b);
}

bool Subspace::insert(std::span<const FieldElem> v) {
  Vec r = reduce(v);
  std::size_t piv = n_;
  for (std::size_t j = 0; j < n_; ++j)
    if (r[j].code) {
      piv = j;
      break;
    }
  if (piv == n_) return false;
  f_->scale(r, f_->inv(r[piv]));
  for (auto& row : rows_) {
    FieldElem x = row[piv];
    if (x.code) f_->axpy(row, r, f_->neg(x));
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  return true;
}

Vec Subspace::reduce(std::span<const FieldElem> v) const {
  Vec r(v.begin(), v.end());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    FieldElem x = r[pivots_[k]];
    if (x.code) f_->axpy(r, rows_[k], f_->neg(x));
  }
  return r;
}

bool Subspace::contains(std::span<const FieldElem> v) const { return is_zero_vec(reduce(v)); }

Vec Subspace::coords(std::span<const FieldElem> v) const {
  Vec c(pivots_.size());
  for (std::size_t k = 0; k < pivots_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

Solver::Solver(const Field& f, const Matrix& a) : f_(&f), cols_(a.cols()) {
  std::size_t n = a.rows();
  Matrix aug(n, cols_ + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = a(i, j);
    aug(i, cols_ + i) = f.one();
  }
  pivots_ = eliminate(f, aug, cols_, true);
  transform_ = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) transform_(i, j) = aug(i, cols_ + j);
}

std::optional<Vec> Solver::solve(std::span<const FieldElem> b) const {
  Vec y = apply(*f_, transform_, b);
  for (std::size_t k = pivots_.size(); k < y.size(); ++k)
    if (y[k].code) return std::nullopt;
  Vec x(cols_);
  for (std::size_t k = 0; k < pivots_.size(); ++k) x[pivots_[k]] = y[k];
  return x;
}

QuotientSpace::QuotientSpace(const Field& f, std::size_t ambient, const Matrix& boundaries, const Matrix& cycles)
    : f_(&f), n_(ambient) {
  Subspace probe(f, ambient);
  for (std::size_t i = 0; i < boundaries.rows(); ++i) probe.insert(boundaries.row(i));
  reps_ = Matrix(0, ambient);
  for (std::size_t i = 0; i < cycles.rows(); ++i)
    if (probe.insert(cycles.row(i))) reps_.append_row(cycles.row(i));
  const std::size_t k = reps_.rows();
  auto push = [&](std::span<const FieldElem> v, Vec tag) {
    Vec r(v.begin(), v.end());
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      FieldElem x = r[pivots_[t]];
      if (x.code) {
        f.axpy(r, rows_[t], f.neg(x));
        f.axpy(tag, tags_[t], f.neg(x));
      }
    }
    std::size_t piv = n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (r[j].code) {
        piv = j;
        break;
      }
    if (piv == n_) return;
    FieldElem inv = f.inv(r[piv]);
    f.scale(r, inv);
    f.scale(tag, inv);
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      FieldElem x = rows_[t][piv];
      if (x.code) {
        f.axpy(rows_[t], r, f.neg(x));
        f.axpy(tags_[t], tag, f.neg(x));
      }
    }
    rows_.push_back(std::move(r));
    tags_.push_back(std::move(tag));
    pivots_.push_back(piv);
  };
  for (std::size_t i = 0; i < boundaries.rows(); ++i) push(boundaries.row(i), Vec(k));
  for (std::size_t i = 0; i < k; ++i) {
    Vec tag(k);
    tag[i] = f.one();
    push(reps_.row(i), std::move(tag));
  }
}

Vec QuotientSpace::coords(std::span<const FieldElem> z) const {
  Vec c(reps_.rows());
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    FieldElem x = z[pivots_[t]];
    if (x.code) f_->axpy(c, tags_[t], x);
  }
  return c;
}

}  // namespace linalg
}  // namespace qea
