#pragma once

#include "soficlab/almost_rep.hpp"

namespace soficlab {

/// Position of t^j in the Laurent window span{t^-m, ..., t^m}.
inline std::size_t laurent_position(Index j, std::size_t m) { return static_cast<std::size_t>(j + static_cast<Index>(m)); }

/// Truncated action of x_i = -t^{i+1} d/dt on span{t^-m..t^m} for |i| <= n:
/// t^j -> -j t^{i+j} when |i + j| <= m, else 0. Requires m >= n >= 1.
AlmostRep witt_rep(std::size_t n, std::size_t m, Field field = Field::rationals());

/// 4n / (2m + 1). Every defect operator of witt_rep(n, m) kills
/// span{t^j : |j| <= m - 2n}, so the certified epsilon is at most this.
/// Requires m >= 2n.
Rational witt_defect_bound(std::size_t n, std::size_t m);

}  // namespace soficlab
