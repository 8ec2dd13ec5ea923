#include "soficlab/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace soficlab {

namespace {

void check_compatible(const ExactMatrix& a, const ExactMatrix& b, const char* op) {
  if (!(a.field() == b.field())) {
    throw std::invalid_argument(std::string(op) + ": field mismatch " + a.field().name() + " vs " + b.field().name());
  }
}

std::string shape(const ExactMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

ExactMatrix::ExactMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), row_offsets_(rows + 1, 0) {}

ExactMatrix ExactMatrix::from_entries(Field field, std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw std::out_of_range("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                              ") outside a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    if (!(e.value.field() == field)) throw std::invalid_argument("entry field does not match matrix field");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  ExactMatrix m(field, rows, cols);
  for (auto& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
      if (m.entries_.back().value.is_zero()) m.entries_.pop_back();
      continue;
    }
    if (!e.value.is_zero()) m.entries_.push_back(std::move(e));
  }
  m.build_offsets();
  return m;
}

ExactMatrix ExactMatrix::identity(Field field, std::size_t n) {
  std::vector<Entry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, Scalar(field, 1)});
  return from_entries(field, n, n, std::move(entries));
}

ExactMatrix ExactMatrix::from_dense(Field field, const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!rows[r][c].is_zero()) entries.push_back({r, c, rows[r][c]});
    }
  }
  return from_entries(field, rows.size(), cols, std::move(entries));
}

ExactMatrix ExactMatrix::from_integers(Field field, const std::vector<std::vector<long long>>& rows) {
  std::vector<Vector> dense;
  dense.reserve(rows.size());
  for (const auto& row : rows) {
    Vector v;
    v.reserve(row.size());
    for (long long x : row) v.emplace_back(field, x);
    dense.push_back(std::move(v));
  }
  return from_dense(field, dense);
}

void ExactMatrix::build_offsets() {
  row_offsets_.assign(rows_ + 1, 0);
  for (const auto& e : entries_) ++row_offsets_[e.row + 1];
  for (std::size_t r = 0; r < rows_; ++r) row_offsets_[r + 1] += row_offsets_[r];
}

std::span<const Entry> ExactMatrix::row(std::size_t r) const {
  if (r >= rows_) throw std::out_of_range("row index out of range");
  return std::span<const Entry>(entries_).subspan(row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]);
}

Scalar ExactMatrix::at(std::size_t r, std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("column index out of range");
  for (const auto& e : row(r)) {
    if (e.col == c) return e.value;
  }
  return Scalar(field_);
}

std::vector<Vector> ExactMatrix::to_dense() const {
  std::vector<Vector> out(rows_, Vector(cols_, Scalar(field_)));
  for (const auto& e : entries_) out[e.row][e.col] = e.value;
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  return from_entries(field_, cols_, rows_, std::move(t));
}

Scalar ExactMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of a non-square " + shape(*this) + " matrix");
  Scalar t(field_);
  for (const auto& e : entries_) {
    if (e.row == e.col) t += e.value;
  }
  return t;
}

ExactMatrix ExactMatrix::scaled(const Scalar& factor) const {
  if (factor.is_zero()) return ExactMatrix(field_, rows_, cols_);
  ExactMatrix out = *this;
  for (auto& e : out.entries_) e.value *= factor;
  return out;
}

Vector ExactMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix columns");
  Vector out(rows_, Scalar(field_));
  for (const auto& e : entries_) {
    if (!v[e.col].is_zero()) out[e.row] += e.value * v[e.col];
  }
  return out;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  check_compatible(a, b, "add");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw std::invalid_argument("add: shape mismatch " + shape(a) + " vs " + shape(b));
  }
  std::vector<Entry> merged(a.entries_.begin(), a.entries_.end());
  merged.insert(merged.end(), b.entries_.begin(), b.entries_.end());
  return ExactMatrix::from_entries(a.field_, a.rows_, a.cols_, std::move(merged));
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  return a + b.scaled(-Scalar(b.field(), 1));
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  check_compatible(a, b, "multiply");
  if (a.cols_ != b.rows_) throw std::invalid_argument("multiply: shape mismatch " + shape(a) + " * " + shape(b));
  std::vector<Entry> out;
  std::map<std::size_t, Scalar> acc;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    acc.clear();
    for (const auto& ea : a.row(r)) {
      for (const auto& eb : b.row(ea.col)) {
        auto [it, inserted] = acc.try_emplace(eb.col, ea.value * eb.value);
        if (!inserted) it->second += ea.value * eb.value;
      }
    }
    for (auto& [c, v] : acc) {
      if (!v.is_zero()) out.push_back({r, c, std::move(v)});
    }
  }
  ExactMatrix m(a.field_, a.rows_, b.cols_);
  m.entries_ = std::move(out);
  m.build_offsets();
  return m;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.nnz() != b.nnz()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || !(x.value == y.value)) return false;
  }
  return true;
}

}  // namespace soficlab
