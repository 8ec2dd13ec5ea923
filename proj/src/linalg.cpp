#include "soficlab/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace soficlab {

namespace {

using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;
using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;

template <typename Row>
const typename Row::value_type::second_type* find_col(const Row& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

template <typename Row>
std::size_t pick_pivot(const std::vector<Row>& rows, std::size_t from, std::size_t col) {
  std::size_t best = rows.size();
  for (std::size_t i = from; i < rows.size(); ++i) {
    if (find_col(rows[i], col) != nullptr && (best == rows.size() || rows[i].size() < rows[best].size())) {
      best = i;
    }
  }
  return best;
}

// (pivot * x - factor * y) / prev, with the division required to be exact.
IntRow bareiss_combine(const IntRow& x, const IntRow& y, const mpz_class& pivot, const mpz_class& factor,
                       const mpz_class& prev) {
  IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  mpz_class value;
  mpz_class rem;
  while (i < x.size() || j < y.size()) {
    std::size_t col;
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      col = x[i].first;
      value = pivot * x[i].second;
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      col = y[j].first;
      value = -factor * y[j].second;
      ++j;
    } else {
      col = x[i].first;
      value = pivot * x[i].second - factor * y[j].second;
      ++i;
      ++j;
    }
    if (value == 0) continue;
    if (prev != 1) {
      mpz_tdiv_qr(value.get_mpz_t(), rem.get_mpz_t(), value.get_mpz_t(), prev.get_mpz_t());
      if (rem != 0) throw std::logic_error("fraction-free elimination produced an inexact division");
    }
    out.emplace_back(col, value);
  }
  return out;
}

std::vector<IntRow> integer_rows(const ExactMatrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto entries = m.row(r);
    if (entries.empty()) continue;
    mpz_class scale = 1;
    for (const auto& e : entries) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.value.rational().get_den_mpz_t());
    IntRow row;
    row.reserve(entries.size());
    for (const auto& e : entries) {
      const Rational& q = e.value.rational();
      row.emplace_back(e.col, q.get_num() * (scale / q.get_den()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Fraction-free elimination. With `jordan` set, rows above the pivot are
// cleared too and the pivot rows come back in reduced form.
std::pair<std::vector<IntRow>, std::vector<std::size_t>> bareiss(std::vector<IntRow> rows, std::size_t cols,
                                                                 bool jordan) {
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
    const std::size_t p = pick_pivot(rows, r, col);
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const mpz_class pivot = *find_col(rows[r], col);
    for (std::size_t i = jordan ? 0 : r + 1; i < rows.size(); ++i) {
      if (i == r) continue;
      const mpz_class* a = find_col(rows[i], col);
      if (a == nullptr) {
        if (rows[i].empty() || (pivot == prev)) continue;
        for (auto& [c, v] : rows[i]) {
          v *= pivot;
          mpz_class rem;
          mpz_tdiv_qr(v.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
          if (rem != 0) throw std::logic_error("fraction-free elimination produced an inexact division");
        }
      } else {
        rows[i] = bareiss_combine(rows[i], rows[r], pivot, mpz_class(*a), prev);
      }
    }
    prev = pivot;
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return {std::move(rows), std::move(pivots)};
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a;
  std::uint64_t exp = p - 2;
  while (exp > 0) {
    if (exp & 1U) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    exp >>= 1U;
  }
  return result;
}

// x - factor * y over F_p.
ModRow mod_axpy(const ModRow& x, const ModRow& y, std::uint64_t factor, std::uint64_t p) {
  ModRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else {
      const std::uint64_t sub = mod_mul(factor, y[j].second, p);
      std::uint64_t v;
      std::size_t col = y[j].first;
      if (i < x.size() && x[i].first == col) {
        v = x[i].second >= sub ? x[i].second - sub : x[i].second + (p - sub);
        ++i;
      } else {
        v = sub == 0 ? 0 : p - sub;
      }
      ++j;
      if (v != 0) out.emplace_back(col, v);
    }
  }
  return out;
}

std::pair<std::vector<ModRow>, std::vector<std::size_t>> modular_elimination(const ExactMatrix& m, bool jordan) {
  const std::uint64_t p = m.field().characteristic();
  std::vector<ModRow> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ModRow row;
    for (const auto& e : m.row(r)) row.emplace_back(e.col, e.value.residue());
    if (!row.empty()) rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < rows.size(); ++col) {
    const std::size_t pr = pick_pivot(rows, r, col);
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    const std::uint64_t inv = mod_inv(*find_col(rows[r], col), p);
    for (auto& [c, v] : rows[r]) v = mod_mul(v, inv, p);
    for (std::size_t i = jordan ? 0 : r + 1; i < rows.size(); ++i) {
      if (i == r) continue;
      const std::uint64_t* a = find_col(rows[i], col);
      if (a != nullptr) rows[i] = mod_axpy(rows[i], rows[r], *a, p);
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return {std::move(rows), std::move(pivots)};
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
  if (m.field().is_rational()) return bareiss(integer_rows(m), m.cols(), false).second.size();
  return modular_elimination(m, false).second.size();
}

Echelon rref(const ExactMatrix& m) {
  const Field field = m.field();
  std::vector<Entry> entries;
  std::vector<std::size_t> pivots;
  if (field.is_rational()) {
    auto [rows, piv] = bareiss(integer_rows(m), m.cols(), true);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const mpz_class lead = *find_col(rows[r], piv[r]);
      for (const auto& [c, v] : rows[r]) entries.push_back({r, c, Scalar(field, Rational(v, lead))});
    }
    pivots = std::move(piv);
  } else {
    auto [rows, piv] = modular_elimination(m, true);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, v] : rows[r]) {
        entries.push_back({r, c, Scalar(field, static_cast<long long>(v))});
      }
    }
    pivots = std::move(piv);
  }
  const std::size_t rk = pivots.size();
  return Echelon{ExactMatrix::from_entries(field, rk, m.cols(), std::move(entries)), std::move(pivots)};
}

SubspaceBasis SubspaceBasis::row_space(const ExactMatrix& rows) { return SubspaceBasis(rref(rows)); }

SubspaceBasis SubspaceBasis::span(Field field, std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw std::invalid_argument("vector length does not match ambient dimension");
  }
  if (vectors.empty()) return zero(field, ambient_dim);
  return row_space(ExactMatrix::from_dense(field, vectors));
}

SubspaceBasis SubspaceBasis::full(Field field, std::size_t ambient_dim) {
  std::vector<std::size_t> pivots(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) pivots[i] = i;
  return SubspaceBasis(Echelon{ExactMatrix::identity(field, ambient_dim), std::move(pivots)});
}

SubspaceBasis SubspaceBasis::zero(Field field, std::size_t ambient_dim) {
  return SubspaceBasis(Echelon{ExactMatrix(field, 0, ambient_dim), {}});
}

bool SubspaceBasis::contains(const Vector& v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("vector length does not match ambient dimension");
  // Reduce v against the echelon basis; v is inside iff nothing survives.
  Vector residual = v;
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const Scalar coeff = residual[pivots_[k]];
    if (coeff.is_zero()) continue;
    for (const auto& e : basis_.row(k)) residual[e.col] -= coeff * e.value;
  }
  return std::all_of(residual.begin(), residual.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  if (other.ambient_dim() != ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  for (const auto& v : other.vectors()) {
    if (!contains(v)) return false;
  }
  return true;
}

SubspaceBasis kernel_basis(const ExactMatrix& m) {
  const Echelon e = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Entry> entries;
  std::size_t k = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    entries.push_back({k, free, Scalar(m.field(), 1)});
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const Scalar a = e.reduced.at(r, free);
      if (!a.is_zero()) entries.push_back({k, e.pivots[r], -a});
    }
    ++k;
  }
  return SubspaceBasis::row_space(ExactMatrix::from_entries(m.field(), k, n, std::move(entries)));
}

SubspaceBasis intersect(std::span<const SubspaceBasis> spaces) {
  if (spaces.empty()) throw std::invalid_argument("intersect: empty list of subspaces");
  const std::size_t n = spaces.front().ambient_dim();
  const Field field = spaces.front().field();
  for (const auto& s : spaces) {
    if (s.ambient_dim() != n) {
      throw std::invalid_argument("intersect: ambient dimensions differ (" + std::to_string(n) + " vs " +
                                  std::to_string(s.ambient_dim()) + ")");
    }
    if (!(s.field() == field)) throw std::invalid_argument("intersect: field mismatch");
  }
  if (spaces.size() == 1) return spaces.front();
  // U ∩ W = common zero set of the annihilators of U and W.
  std::vector<ExactMatrix> constraints;
  for (const auto& s : spaces) constraints.push_back(kernel_basis(s.echelon()).echelon());
  return kernel_basis(vstack(constraints));
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("kron: field mismatch");
  std::vector<Entry> entries;
  entries.reserve(a.nnz() * b.nnz());
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      entries.push_back({ea.row * b.rows() + eb.row, ea.col * b.cols() + eb.col, ea.value * eb.value});
    }
  }
  return ExactMatrix::from_entries(a.field(), a.rows() * b.rows(), a.cols() * b.cols(), std::move(entries));
}

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("direct_sum: field mismatch");
  std::vector<Entry> entries(a.entries().begin(), a.entries().end());
  for (const auto& e : b.entries()) entries.push_back({e.row + a.rows(), e.col + a.cols(), e.value});
  return ExactMatrix::from_entries(a.field(), a.rows() + b.rows(), a.cols() + b.cols(), std::move(entries));
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw std::invalid_argument("commutator: operands must be square of equal size");
  }
  return a * b - b * a;
}

ExactMatrix vstack(std::span<const ExactMatrix> blocks) {
  if (blocks.empty()) throw std::invalid_argument("vstack: no blocks");
  const std::size_t cols = blocks.front().cols();
  const Field field = blocks.front().field();
  std::vector<Entry> entries;
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column counts differ");
    for (const auto& e : b.entries()) entries.push_back({e.row + offset, e.col, e.value});
    offset += b.rows();
  }
  return ExactMatrix::from_entries(field, offset, cols, std::move(entries));
}

}  // namespace soficlab
