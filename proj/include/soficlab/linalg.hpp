#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "soficlab/matrix.hpp"

namespace soficlab {

/// Reduced row echelon form: `reduced` has one row per pivot, each pivot
/// entry equal to one and zero above/below it.
struct Echelon {
  ExactMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Exact rank. Over Q this runs fraction-free (Bareiss) elimination on an
/// integer-scaled copy; over F_p plain modular elimination.
std::size_t rank(const ExactMatrix& m);

Echelon rref(const ExactMatrix& m);

/// A subspace of F^n stored as the rows of its reduced echelon basis, so two
/// equal subspaces compare equal structurally.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;

  static SubspaceBasis span(Field field, std::size_t ambient_dim, const std::vector<Vector>& vectors);
  /// Row space of `rows`.
  static SubspaceBasis row_space(const ExactMatrix& rows);
  static SubspaceBasis full(Field field, std::size_t ambient_dim);
  static SubspaceBasis zero(Field field, std::size_t ambient_dim);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  /// Rows are the basis vectors, in reduced echelon form.
  const ExactMatrix& echelon() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vector> vectors() const { return basis_.to_dense(); }

  bool contains(const Vector& v) const;
  bool contains(const SubspaceBasis& other) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.basis_ == b.basis_;
  }

 private:
  explicit SubspaceBasis(Echelon e) : basis_(std::move(e.reduced)), pivots_(std::move(e.pivots)) {}

  ExactMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Right null space; dimension is cols - rank.
SubspaceBasis kernel_basis(const ExactMatrix& m);

/// Throws std::invalid_argument on an empty list or mismatched ambient dims.
SubspaceBasis intersect(std::span<const SubspaceBasis> spaces);

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b);
/// AB - BA for square matrices of equal size.
ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);
/// Stacks matrices with a common column count on top of each other.
ExactMatrix vstack(std::span<const ExactMatrix> blocks);

}  // namespace soficlab
