#pragma once

// Dense matrices over a Field and the elimination routines everything else
// is built on. Matrices are row-major; vectors are plain std::vector.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qea/field.hpp"

namespace qea {

using Vec = std::vector<FieldElem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(const Field& f, std::size_t n);
  static Matrix diagonal(std::span<const FieldElem> d);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  FieldElem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<FieldElem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const FieldElem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  Vec col_vec(std::size_t j) const;
  void set_col(std::size_t j, std::span<const FieldElem> v);
  void append_row(std::span<const FieldElem> v);
  const std::vector<FieldElem>& data() const { return data_; }

  bool is_zero() const;
  bool is_diagonal() const;
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

namespace linalg {

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Vec apply(const Field& f, const Matrix& a, std::span<const FieldElem> v);
Matrix add(const Field& f, const Matrix& a, const Matrix& b);
Matrix sub(const Field& f, const Matrix& a, const Matrix& b);
Matrix scale(const Field& f, const Matrix& a, FieldElem c);
Matrix transpose(const Matrix& a);
Matrix kron(const Field& f, const Matrix& a, const Matrix& b);
Matrix power(const Field& f, const Matrix& a, std::size_t k);
Matrix submatrix(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols);
bool is_zero_vec(std::span<const FieldElem> v);

struct Echelon {
  Matrix rows;                      // reduced row echelon rows, one per pivot
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t rank() const { return pivots.size(); }
};

Echelon rref(const Field& f, Matrix a);
std::size_t rank(const Field& f, Matrix a);
// Rows form a basis of the kernel. Each row has a 1 at its own free column and
// zeros at the other free columns, so coordinates can be read off directly.
Matrix nullspace(const Field& f, const Matrix& a);
Matrix inverse(const Field& f, const Matrix& a);
std::optional<Vec> solve(const Field& f, const Matrix& a, std::span<const FieldElem> b);

// A subspace kept in reduced row echelon form, grown one vector at a time.
class Subspace {
 public:
  Subspace(const Field& f, std::size_t ambient) : f_(&f), n_(ambient) {}
  std::size_t dim() const { return pivots_.size(); }
  std::size_t ambient() const { return n_; }
  // Returns true when v was independent of the current span.
  bool insert(std::span<const FieldElem> v);
  Vec reduce(std::span<const FieldElem> v) const;
  bool contains(std::span<const FieldElem> v) const;
  // Coordinates of v with respect to basis(); v must lie in the span.
  Vec coords(std::span<const FieldElem> v) const;
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  const Field* f_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Precomputed elimination for repeated solves against one matrix.
class Solver {
 public:
  Solver() = default;
  Solver(const Field& f, const Matrix& a);
  std::optional<Vec> solve(std::span<const FieldElem> b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  const Field* f_ = nullptr;
  std::size_t cols_ = 0;
  Matrix transform_;
  std::vector<std::size_t> pivots_;
};

// Coordinates in a quotient Z/B. Representatives are the members of Z that
// are independent modulo B, in the order given.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(const Field& f, std::size_t ambient, const Matrix& boundaries, const Matrix& cycles);
  std::size_t dim() const { return reps_.rows(); }
  const Matrix& representatives() const { return reps_; }
  // z must be a cycle; returns its class in the representative basis.
  Vec coords(std::span<const FieldElem> z) const;

 private:
  const Field* f_ = nullptr;
  std::size_t n_ = 0;
  Matrix reps_;
  std::vector<Vec> rows_;
  std::vector<Vec> tags_;
  std::vector<std::size_t> pivots_;
};

}  // namespace linalg
}  // namespace qea
