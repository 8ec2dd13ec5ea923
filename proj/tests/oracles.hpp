#pragma once

// Test-only reference implementations. They deliberately avoid the library's
// elimination code so that agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "soficlab/lie.hpp"
#include "soficlab/matrix.hpp"

namespace oracle {

/// Dense Gauss-Jordan over Q directly on mpq_class.
inline std::size_t rational_rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Dense elimination over F_p on plain integers.
inline std::size_t modular_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1;
    std::int64_t b = ((x % p) + p) % p;
    for (std::int64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
    }
    return r;
  };
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::int64_t iv = inv(a[rank][c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c] * iv % p;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Rank of a library matrix via the matching oracle for its field.
inline std::size_t rank(const soficlab::ExactMatrix& m) {
  if (m.field().is_rational()) {
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols(), 0));
    for (const auto& e : m.entries()) a[e.row][e.col] = e.value.rational();
    return rational_rank(std::move(a));
  }
  std::vector<std::vector<std::int64_t>> a(m.rows(), std::vector<std::int64_t>(m.cols(), 0));
  for (const auto& e : m.entries()) a[e.row][e.col] = static_cast<std::int64_t>(e.value.residue());
  return modular_rank(std::move(a), static_cast<std::int64_t>(m.field().characteristic()));
}

using Dense = std::vector<std::vector<mpq_class>>;

inline Dense dense(const soficlab::ExactMatrix& m) {
  Dense a(m.rows(), std::vector<mpq_class>(m.cols(), 0));
  for (const auto& e : m.entries()) a[e.row][e.col] = e.value.rational();
  return a;
}

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  Dense c(a.size(), std::vector<mpq_class>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// a + s * b
inline Dense axpy(const Dense& a, const mpq_class& s, const Dense& b) {
  Dense c = a;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += s * b[i][j];
  return c;
}

/// Dimension of the common kernel of the given square operators on Q^n.
inline std::size_t common_kernel_dim(const std::vector<Dense>& ops, std::size_t n) {
  Dense stacked;
  for (const auto& op : ops) stacked.insert(stacked.end(), op.begin(), op.end());
  if (stacked.empty()) return n;
  return n - rational_rank(std::move(stacked));
}

inline bool kills(const Dense& op, const std::vector<soficlab::Scalar>& v) {
  for (const auto& row : op) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * v[j].rational();
    if (acc != 0) return false;
  }
  return true;
}

/// x_i acting on span{t^-m..t^m}, written straight from the piecewise rule
/// (x_i: t^j -> -j t^{i+j} for j <= m - i, x_{-i}: t^j -> -j t^{j-i} for j >= i - m).
inline Dense witt_image(long i, long m) {
  const std::size_t n = static_cast<std::size_t>(2 * m + 1);
  Dense a(n, std::vector<mpq_class>(n, 0));
  for (long j = -m; j <= m; ++j) {
    const bool kept = i >= 0 ? j <= m - i : j >= -i - m;
    if (!kept) continue;
    a[static_cast<std::size_t>(i + j + m)][static_cast<std::size_t>(j + m)] = -j;
  }
  return a;
}

/// Random sparse matrix with small integer (or small fraction) entries.
inline soficlab::ExactMatrix random_matrix(std::mt19937_64& rng, soficlab::Field field, std::size_t rows,
                                           std::size_t cols, double density = 0.4, bool fractions = false) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> value(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<soficlab::Entry> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (coin(rng) >= density) continue;
      mpq_class q(value(rng), fractions ? den(rng) : 1);
      q.canonicalize();
      if (!field.is_rational() && field.characteristic() <= 3 && q.get_den() != 1) q = q.get_num();
      entries.push_back({r, c, soficlab::Scalar(field, q)});
    }
  }
  return soficlab::ExactMatrix::from_entries(field, rows, cols, std::move(entries));
}

// --- U(L) words ------------------------------------------------------------

using Word = std::vector<soficlab::Index>;
using Poly = std::map<Word, mpq_class>;

/// Rewrites a word in U(L) into ordered monomials by adjacent swaps at the
/// first descent, x_a x_b = x_b x_a + [x_a, x_b].
inline Poly straighten(const soficlab::LiePresentation& pres, const Word& start) {
  Poly work{{start, mpq_class(1)}};
  Poly out;
  while (!work.empty()) {
    auto node = work.begin();
    const Word w = node->first;
    const mpq_class c = node->second;
    work.erase(node);
    if (c == 0) continue;
    std::size_t p = 0;
    while (p + 1 < w.size() && w[p] <= w[p + 1]) ++p;
    if (p + 1 >= w.size()) {
      out[w] += c;
      continue;
    }
    Word swapped = w;
    std::swap(swapped[p], swapped[p + 1]);
    work[swapped] += c;
    const soficlab::Combination br = pres.bracket(w[p], w[p + 1]);
    for (const auto& [k, coeff] : br.terms()) {
      Word merged(w.begin(), w.begin() + static_cast<long>(p));
      merged.push_back(k);
      merged.insert(merged.end(), w.begin() + static_cast<long>(p) + 2, w.end());
      work[merged] += c * coeff.rational();
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Echelon basis of polynomials keyed by their leading monomial.
class PolySpan {
 public:
  bool add(Poly p) {
    for (const auto& [lead, row] : rows_) {
      auto it = p.find(lead);
      if (it == p.end()) continue;
      const mpq_class f = it->second;
      for (const auto& [w, c] : row) p[w] -= f * c;
      std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
    }
    if (p.empty()) return false;
    const Word lead = p.begin()->first;
    const mpq_class inv = 1 / p.begin()->second;
    for (auto& [w, c] : p) c *= inv;
    for (auto& [l, row] : rows_) {
      auto it = row.find(lead);
      if (it == row.end()) continue;
      const mpq_class f = it->second;
      for (const auto& [w, c] : p) row[w] -= f * c;
      std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    }
    rows_.emplace(lead, std::move(p));
    return true;
  }
  std::size_t dim() const { return rows_.size(); }
  std::vector<Poly> basis() const {
    std::vector<Poly> out;
    for (const auto& [l, row] : rows_) out.push_back(row);
    return out;
  }

 private:
  std::map<Word, Poly> rows_;
};

/// dim W_k for k = 0..n: W_k = W_{k-1} + generators * W_{k-1}, every product
/// straightened in the base presentation.
inline std::vector<std::size_t> words_oracle(const soficlab::LiePresentation& pres, const std::vector<soficlab::Index>& gens, std::size_t n) {
  PolySpan span;
  span.add({{Word{}, mpq_class(1)}});
  std::vector<std::size_t> dims{span.dim()};
  for (std::size_t k = 1; k <= n; ++k) {
    const auto previous = span.basis();
    for (soficlab::Index g : gens) {
      for (const auto& p : previous) {
        Poly product;
        for (const auto& [w, c] : p) {
          Word gw{g};
          gw.insert(gw.end(), w.begin(), w.end());
          for (const auto& [w2, c2] : straighten(pres, gw)) product[w2] += c * c2;
        }
        std::erase_if(product, [](const auto& kv) { return kv.second == 0; });
        span.add(std::move(product));
      }
    }
    dims.push_back(span.dim());
  }
  return dims;
}

// --- partitions -----------------------------------------------------------

/// Counts weakly decreasing sequences of length <= d with parts in [1, m] by
/// walking them one at a time.
inline std::uint64_t count_partitions(int m, int d) {
  std::uint64_t count = 0;
  std::function<void(int, int)> walk = [&](int length, int cap) {
    ++count;
    if (length == d) return;
    for (int p = 1; p <= cap; ++p) walk(length + 1, p);
  };
  walk(0, m);
  return count;
}

}  // namespace oracle
