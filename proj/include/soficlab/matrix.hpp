#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "soficlab/field.hpp"

namespace soficlab {

using Vector = std::vector<Scalar>;

struct Entry {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

/// Immutable sparse matrix over a Field. Entries are kept sorted row-major
/// with a row offset table; no stored entry is zero.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(Field field, std::size_t rows, std::size_t cols);

  /// Duplicate positions are summed; zero results are dropped.
  static ExactMatrix from_entries(Field field, std::size_t rows, std::size_t cols, std::vector<Entry> entries);
  static ExactMatrix identity(Field field, std::size_t n);
  /// Row-major dense input; every row must have the same length.
  static ExactMatrix from_dense(Field field, const std::vector<Vector>& rows);
  static ExactMatrix from_integers(Field field, const std::vector<std::vector<long long>>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  std::span<const Entry> entries() const { return entries_; }
  std::span<const Entry> row(std::size_t r) const;
  Scalar at(std::size_t r, std::size_t c) const;

  std::vector<Vector> to_dense() const;
  ExactMatrix transpose() const;
  Scalar trace() const;
  ExactMatrix scaled(const Scalar& factor) const;
  Vector apply(const Vector& v) const;

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  void build_offsets();

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> row_offsets_{0};
};

}  // namespace soficlab
