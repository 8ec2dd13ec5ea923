#include "soficlab/witt.hpp"

#include <stdexcept>
#include <string>

namespace soficlab {

AlmostRep witt_rep(std::size_t n, std::size_t m, Field field) {
  if (n < 1) throw std::invalid_argument("witt_rep: n must be at least 1");
  if (m < n) throw std::invalid_argument("witt_rep: need m >= n (got n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  const Index nn = static_cast<Index>(n);
  const Index mm = static_cast<Index>(m);
  std::vector<Index> indices;
  for (Index i = -nn; i <= nn; ++i) indices.push_back(i);
  Window window = make_window(witt(field), indices);

  const std::size_t dim = 2 * m + 1;
  std::vector<ExactMatrix> images;
  for (Index i : indices) {
    std::vector<Entry> entries;
    for (Index j = -mm; j <= mm; ++j) {
      if (j == 0 || i + j < -mm || i + j > mm) continue;
      entries.push_back({laurent_position(i + j, m), laurent_position(j, m), Scalar(field, -j)});
    }
    images.push_back(ExactMatrix::from_entries(field, dim, dim, std::move(entries)));
  }
  return AlmostRep(std::move(window), dim, std::move(images));
}

Rational witt_defect_bound(std::size_t n, std::size_t m) {
  if (m < 2 * n) {
    throw std::invalid_argument("witt_defect_bound: need m >= 2n (got n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
  Rational bound(static_cast<long>(4 * n), static_cast<long>(2 * m + 1));
  bound.canonicalize();
  return bound;
}

}  // namespace soficlab
