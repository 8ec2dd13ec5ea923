#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "soficlab/almost_rep.hpp"

namespace soficlab {

/// lambda(x_0) = h and lambda(c) = z.
struct HighestWeight {
  Scalar h;
  Scalar z;
};

/// x_{-i_1} ... x_{-i_k} (x) 1 with i_1 >= ... >= i_k >= 1; empty = highest-weight vector.
using VermaMonomial = std::vector<Index>;
using VermaVector = std::map<VermaMonomial, Scalar>;

bool is_verma_monomial(const VermaMonomial& parts);

/// Monomials with at most d parts, each at most m, ordered by (length, parts).
class VermaWindow {
 public:
  VermaWindow(std::size_t m, std::size_t d);

  std::size_t max_part() const { return m_; }
  std::size_t max_length() const { return d_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<VermaMonomial>& basis() const { return basis_; }
  std::optional<std::size_t> position(const VermaMonomial& v) const;
  bool contains(const VermaMonomial& v) const { return position(v).has_value(); }

 private:
  std::size_t m_;
  std::size_t d_;
  std::vector<VermaMonomial> basis_;
  std::map<VermaMonomial, std::size_t> positions_;
};

/// Number of partitions fitting in a d x m box (the empty one included).
std::uint64_t verma_dim(std::size_t m, std::size_t d);

/// Exact action of the Virasoro modes on the Verma module M(lambda), by
/// recursive normal ordering. Results are memoised per (mode, monomial).
class VermaModule {
 public:
  VermaModule(Field field, HighestWeight weight);

  const Field& field() const { return field_; }
  const HighestWeight& weight() const { return weight_; }

  /// x_r . v, with no truncation. Throws for the central index.
  const VermaVector& apply(Index r, const VermaMonomial& v);

 private:
  VermaVector compute(Index r, const VermaMonomial& v);
  void add_scaled(VermaVector& acc, const VermaVector& term, const Scalar& factor);

  Field field_;
  HighestWeight weight_;
  std::map<std::pair<Index, VermaMonomial>, VermaVector> memo_;
};

/// x_r . v in M(lambda), projected onto the window.
VermaVector normal_order_apply(Index r, const VermaMonomial& v, const HighestWeight& weight,
                               const VermaWindow& window);

/// Compression of the Verma action to VermaWindow(m, d) on the window
/// {x_-n, ..., x_n, c}; the image of c is z * Id. Requires m >= n >= 1, d >= 1.
AlmostRep virasoro_rep(std::size_t n, std::size_t m, std::size_t d, const HighestWeight& weight);

}  // namespace soficlab
