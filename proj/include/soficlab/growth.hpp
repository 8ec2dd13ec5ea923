#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "soficlab/almost_rep.hpp"

namespace soficlab {

/// Ordered PBW monomial: a nondecreasing list of basis indices.
using PbwMonomial = std::vector<Index>;
using PbwVector = std::map<PbwMonomial, Scalar>;

/// Rewrites products in U(L) into the ordered PBW basis of a presentation,
/// using x_j x_i = x_i x_j + [x_j, x_i] for j > i. Memoised.
class PbwStraightener {
 public:
  explicit PbwStraightener(PresentationPtr presentation);

  /// x_i * monomial, straightened.
  const PbwVector& multiply(Index i, const PbwMonomial& monomial);
  /// Left multiplication of a whole vector.
  PbwVector multiply(Index i, const PbwVector& v);

 private:
  PbwVector compute(Index i, const PbwMonomial& monomial);

  PresentationPtr presentation_;
  std::map<std::pair<Index, PbwMonomial>, PbwVector> memo_;
};

/// Word-length filtration V_1 = span(generators), V_n = V_{n-1} + [V_1, V_{n-1}].
struct FiltrationTable {
  PresentationPtr base;
  std::vector<Index> generators;
  Index radius = 0;
  /// lie_dims[n] = dim V_n for n = 0..levels.
  std::vector<std::size_t> lie_dims;
  /// Filtered basis y_1, y_2, ... in base coordinates; y_k sits at position k - 1.
  std::vector<Combination> basis;
  /// Filtration level at which each basis element first appears.
  std::vector<std::size_t> basis_lengths;
  /// True once V_n = V_{n+1}, after which the table is valid at every level.
  bool stabilized = false;
  /// The same algebra presented on y_1..y_dim, ordered by (length, index).
  PresentationPtr filtered;

  std::size_t levels() const { return lie_dims.empty() ? 0 : lie_dims.size() - 1; }
  /// dim V_n; throws std::out_of_range past the computed levels of a
  /// non-stabilised table.
  std::size_t lie_dim(std::size_t n) const;
};

/// Builds the filtration up to n_max (stopping early once it stabilises).
/// Infinite presentations must stay within |index| <= radius; escaping is an
/// error (std::range_error), never a silent truncation.
FiltrationTable lie_filtration(PresentationPtr presentation, std::vector<Index> generators, std::size_t n_max,
                               Index radius = 64);

/// gamma(k) = dim W_k for k = 0..n_max: the number of ordered PBW monomials
/// over the filtered basis whose total length is at most k.
std::vector<std::uint64_t> pbw_dims(const FiltrationTable& table, std::size_t n_max);

/// Ordered PBW monomials over the filtered basis of total length <= m,
/// sorted by (length, indices).
std::vector<PbwMonomial> pbw_carrier(const FiltrationTable& table, std::size_t m);

/// Window = filtered basis of V_n; carrier = W_m; each y_i acts by left
/// multiplication in U(L) followed by projection onto W_m. Requires m > n >= 1.
AlmostRep left_mult_rep(const FiltrationTable& table, std::size_t n, std::size_t m);

/// (gamma(m) - gamma(m - n)) / gamma(m) for m in [m_lo, m_hi], gamma(k < 0) = 0.
std::vector<Rational> growth_ratio_table(const FiltrationTable& table, std::size_t n, std::size_t m_lo,
                                         std::size_t m_hi);

struct GrowthDiagnostics {
  /// Last `tail` ratios never increase.
  bool tail_non_increasing = true;
  /// Last `tail` ratios all stay at or above the threshold: the pattern
  /// exponential growth would produce. A hint, never a verdict.
  bool stalls_above_threshold = false;
};

GrowthDiagnostics diagnose_growth(std::span<const Rational> ratios, const Rational& threshold, std::size_t tail = 3);

/// Default generating sets used by the CLI.
std::vector<Index> default_generators(const LiePresentation& presentation);

/// Rebuilds the filtered presentation recorded in a descriptor
/// {"name": "filtered", "base", "gens", "levels", "radius"}.
PresentationPtr filtered_from_descriptor(Field field, const json& descriptor);

/// Built-ins, custom tables and filtered presentations.
PresentationPtr presentation_from_descriptor(Field field, const json& descriptor);

}  // namespace soficlab
