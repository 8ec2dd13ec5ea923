#pragma once

#include <vector>

#include "soficlab/almost_rep.hpp"

namespace soficlab {

/// Theta^i(x) = Theta^{i-1}(x) (x) Id_N + Id_{N^{i-1}} (x) Theta(x), with
/// Theta^0 = 0 on the 1-dimensional space.
class TensorLift {
 public:
  TensorLift(AlmostRep base, std::size_t degree);

  const AlmostRep& base() const { return base_; }
  std::size_t degree() const { return degree_; }
  /// N^degree.
  std::size_t size() const { return size_; }
  const ExactMatrix& image(Index i) const;
  const std::vector<ExactMatrix>& images() const { return images_; }

 private:
  AlmostRep base_;
  std::size_t degree_;
  std::size_t size_;
  std::vector<ExactMatrix> images_;
};

/// Throws SizeCapExceeded when N^degree exceeds the size cap.
TensorLift tensor_lift(const AlmostRep& base, std::size_t degree);

/// Ordered product of lift images over a monomial given as window indices;
/// the empty monomial maps to the identity.
ExactMatrix monomial_image(const TensorLift& lift, const std::vector<Index>& monomial);

/// Sum over all d! orderings of the pure tensor of base images.
/// Over F_p with p <= d this is computed anyway; it is where the
/// characteristic-0 hypothesis visibly fails.
ExactMatrix symmetrized_tensor(const AlmostRep& base, const std::vector<Index>& monomial);

/// The N^d x N^d operator acting by `m` on the tensor slots outside
/// `identity_slots` (in order) and by the identity on the listed slots.
ExactMatrix place_identities(const ExactMatrix& m, std::size_t n, std::size_t d,
                             const std::vector<std::size_t>& identity_slots);

/// Sum over the d single-slot identity placements into Theta^{d-1}(monomial).
ExactMatrix single_identity_placements(const AlmostRep& base, const std::vector<Index>& monomial);

/// Sum over nonempty slot sets S of (-1)^{|S|+1} times the identity placed on
/// S inside Theta^{d-|S|}(monomial): the part of Theta^d(monomial) coming
/// from non-surjective assignments of factors to slots.
ExactMatrix low_order_part(const AlmostRep& base, const std::vector<Index>& monomial);

/// Theta^d(monomial) - low_order_part(monomial), with d = deg(monomial).
/// Equals symmetrized_tensor(monomial).
ExactMatrix leading_term(const AlmostRep& base, const std::vector<Index>& monomial);

/// Ordered monomials of degree <= D in the window positions, graded-lex,
/// as nondecreasing sequences of window indices. Count C(w + D, D).
std::vector<std::vector<Index>> pbw_monomial_window(const Window& window, std::size_t degree);

struct InjectivityReport {
  std::size_t rank = 0;
  std::size_t monomial_count = 0;
  bool injective = false;
  std::size_t degree = 0;
  Field field = Field::rationals();
};

/// Rank of the map sending each PBW monomial of degree <= D to the
/// concatenation of its flattened images under Theta^0, ..., Theta^D.
/// Throws std::invalid_argument when the base images are linearly dependent.
InjectivityReport injectivity_check(const AlmostRep& base, std::size_t degree);

/// Faithful matrix representations: sl2 (2x2), heisenberg (strictly upper
/// 3x3), abelian:k (diagonal k x k).
AlmostRep standard_rep(PresentationPtr presentation);

}  // namespace soficlab
