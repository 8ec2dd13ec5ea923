#include "soficlab/almost_rep.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "soficlab/config.hpp"

namespace soficlab {

AlmostRep::AlmostRep(Window window, std::size_t carrier_dim, std::vector<ExactMatrix> images)
    : window_(std::move(window)), carrier_dim_(carrier_dim), images_(std::move(images)) {
  if (!window_.presentation()) throw std::invalid_argument("almost representation needs a window");
  if (images_.size() != window_.size()) {
    throw std::invalid_argument("expected " + std::to_string(window_.size()) + " images, got " +
                                std::to_string(images_.size()));
  }
  for (const auto& m : images_) {
    if (m.rows() != carrier_dim_ || m.cols() != carrier_dim_) {
      throw std::invalid_argument("image is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                  ", carrier dimension is " + std::to_string(carrier_dim_));
    }
    if (!(m.field() == field())) throw std::invalid_argument("image field does not match the presentation field");
  }
}

const ExactMatrix& AlmostRep::image(Index i) const {
  const auto pos = window_.position(i);
  if (!pos) throw std::out_of_range("index " + std::to_string(i) + " is not in the window");
  return images_[*pos];
}

ExactMatrix AlmostRep::image_of(const Combination& element) const {
  ExactMatrix out(field(), carrier_dim_, carrier_dim_);
  for (const auto& [i, c] : element.terms()) out = out + image(i).scaled(c);
  return out;
}

ExactMatrix defect_operator(const AlmostRep& rep, const CheckablePair& pair) {
  const ExactMatrix& a = rep.image(pair.left);
  const ExactMatrix& b = rep.image(pair.right);
  return rep.image_of(pair.bracket) - commutator(a, b);
}

DefectReport defect_subspace(const AlmostRep& rep) {
  const Field field = rep.field();
  const std::size_t n = rep.carrier_dim();
  const auto& pairs = rep.window().checkable_pairs();

  std::map<std::pair<Index, Index>, const Combination*> seen;
  std::vector<ExactMatrix> defects;
  for (const auto& pair : pairs) {
    if (pair.left == pair.right && pair.bracket.is_zero()) continue;
    // D(j, i) = -D(i, j) whenever the table is antisymmetric on this pair.
    auto twin = seen.find({pair.right, pair.left});
    if (twin != seen.end() && (*twin->second + pair.bracket).is_zero()) continue;
    seen[{pair.left, pair.right}] = &pair.bracket;
    ExactMatrix d = defect_operator(rep, pair);
    if (!d.is_zero()) defects.push_back(std::move(d));
  }

  DefectReport report;
  report.good_subspace = defects.empty() ? SubspaceBasis::full(field, n) : kernel_basis(vstack(defects));
  report.defect_ratio = n == 0 ? Rational(0) : Rational(static_cast<long>(n - report.good_subspace.dim()),
                                                        static_cast<long>(n));
  report.defect_ratio.canonicalize();
  for (Index i : rep.window().basis()) {
    const std::size_t rk = rank(rep.image(i));
    Rational rho = n == 0 ? Rational(0) : Rational(static_cast<long>(rk), static_cast<long>(n));
    rho.canonicalize();
    report.element_ranks[i] = ElementRank{rk, rho};
  }
  return report;
}

Rational normalized_rank(const AlmostRep& rep, const Combination& element) {
  if (rep.carrier_dim() == 0) throw std::invalid_argument("normalized rank on a zero-dimensional carrier");
  Rational rho(static_cast<long>(rank(rep.image_of(element))), static_cast<long>(rep.carrier_dim()));
  rho.canonicalize();
  return rho;
}

bool sofic_witness(const AlmostRep& rep, const Combination& element, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw std::invalid_argument("delta must lie in (0, 1], got " + rational_to_string(delta));
  const Rational rk(static_cast<long>(rank(rep.image_of(element))));
  return rk >= delta * static_cast<long>(rep.carrier_dim());
}

AlmostRep abelian_witness(const Window& window, const Combination& p) {
  const auto& pres = *window.presentation();
  const Field field = pres.field();
  if (p.is_zero()) throw std::invalid_argument("abelian_witness: p must be nonzero");
  for (const auto& [i, c] : p.terms()) {
    if (!window.contains(i)) throw std::out_of_range("abelian_witness: p uses index " + std::to_string(i) + " outside the window");
  }
  for (Index i : window.basis()) {
    for (Index j : window.basis()) {
      if (!pres.bracket(i, j).is_zero()) {
        throw std::invalid_argument("abelian_witness: window is not abelian ([" + pres.label(i) + ", " +
                                    pres.label(j) + "] != 0)");
      }
    }
  }
  // Extend p to a basis by swapping it in for its first supported window
  // element; every other basis element spans the complement sent to zero.
  Index pivot = 0;
  for (Index i : window.basis()) {
    if (!p.coefficient(field, i).is_zero()) {
      pivot = i;
      break;
    }
  }
  std::vector<ExactMatrix> images;
  for (Index i : window.basis()) {
    if (i == pivot) {
      images.push_back(ExactMatrix::from_entries(field, 1, 1, {{0, 0, p.coefficient(field, i).inverse()}}));
    } else {
      images.emplace_back(field, 1, 1);
    }
  }
  return AlmostRep(window, 1, std::move(images));
}

ExactMatrix trace_fix(const ExactMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("trace_fix: matrix must be square");
  const Scalar t = m.trace();
  if (t.is_zero()) return m;
  return m - ExactMatrix::from_entries(m.field(), m.rows(), m.cols(), {{0, 0, t}});
}

AlmostRep combine_weighted(std::span<const AlmostRep> reps) {
  if (reps.empty()) throw std::invalid_argument("combine_weighted: need at least one representation");
  const Window& window = reps.front().window();
  const Field field = reps.front().field();
  std::size_t common = 1;
  for (const auto& r : reps) {
    if (!r.window().same_as(window)) throw std::invalid_argument("combine_weighted: window mismatch");
    if (!(r.field() == field)) throw std::invalid_argument("combine_weighted: field mismatch");
    if (r.carrier_dim() == 0) throw std::invalid_argument("combine_weighted: zero-dimensional carrier");
    common = std::lcm(common, r.carrier_dim());
  }
  const std::size_t k = reps.size();
  if (k >= 8 * sizeof(std::size_t) - 1) throw SizeCapExceeded("combine_weighted", SIZE_MAX, size_cap());
  const std::size_t out_dim = (std::size_t{1} << k) * common;
  enforce_size_cap("combine_weighted carrier", out_dim);

  std::vector<ExactMatrix> images;
  for (std::size_t w = 0; w < window.size(); ++w) {
    ExactMatrix block(field, 0, 0);
    for (std::size_t i = 1; i <= k; ++i) {
      const AlmostRep& psi = reps[i - 1];
      const std::size_t copies = (std::size_t{1} << (k - i)) * (common / psi.carrier_dim());
      block = direct_sum(block, kron(psi.images()[w], ExactMatrix::identity(field, copies)));
    }
    images.push_back(direct_sum(block, ExactMatrix(field, common, common)));
  }
  return AlmostRep(window, out_dim, std::move(images));
}

}  // namespace soficlab
