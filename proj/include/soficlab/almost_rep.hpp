#pragma once

#include <map>
#include <span>
#include <vector>

#include "soficlab/lie.hpp"
#include "soficlab/linalg.hpp"

namespace soficlab {

/// A linear map phi: W -> gl(V), stored as one carrier_dim x carrier_dim
/// matrix per window basis element (in window order).
class AlmostRep {
 public:
  AlmostRep() = default;
  AlmostRep(Window window, std::size_t carrier_dim, std::vector<ExactMatrix> images);

  const Window& window() const { return window_; }
  const Field& field() const { return window_.presentation()->field(); }
  std::size_t carrier_dim() const { return carrier_dim_; }
  const std::vector<ExactMatrix>& images() const { return images_; }
  const ExactMatrix& image(Index i) const;
  /// phi extended linearly; throws std::out_of_range off the window.
  ExactMatrix image_of(const Combination& element) const;

 private:
  Window window_;
  std::size_t carrier_dim_ = 0;
  std::vector<ExactMatrix> images_;
};

struct ElementRank {
  std::size_t rank = 0;
  Rational normalized;
};

/// Largest subspace on which every checkable basis pair satisfies the
/// bracket law, and the resulting minimal epsilon.
struct DefectReport {
  SubspaceBasis good_subspace;
  Rational defect_ratio;
  std::map<Index, ElementRank> element_ranks;
};

/// phi([x, y]) - (phi(x) phi(y) - phi(y) phi(x)) for one checkable pair.
ExactMatrix defect_operator(const AlmostRep& rep, const CheckablePair& pair);

DefectReport defect_subspace(const AlmostRep& rep);

/// rank(phi(element)) / carrier_dim.
Rational normalized_rank(const AlmostRep& rep, const Combination& element);

/// True iff rank(phi(element)) >= delta * carrier_dim. Requires 0 < delta <= 1.
bool sofic_witness(const AlmostRep& rep, const Combination& element, const Rational& delta);

/// One-dimensional representation of an abelian window with phi(p) = 1 and a
/// complement of F p sent to zero.
AlmostRep abelian_witness(const Window& window, const Combination& p);

/// M - tr(M) E_11: traceless, and differs from M by a matrix of rank <= 1.
ExactMatrix trace_fix(const ExactMatrix& m);

/// Weighted amplification of k reps over one window: the image of x is
/// (+)_i psi_i(x) (x) Id_{2^{k-i} N / n_i}, padded with an N x N zero block,
/// so rho_out(x) = sum_i 2^{-i} rho_i(x) exactly. N is the lcm of the n_i.
AlmostRep combine_weighted(std::span<const AlmostRep> reps);

}  // namespace soficlab
