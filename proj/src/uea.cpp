#include "soficlab/uea.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "soficlab/config.hpp"

namespace soficlab {

namespace {

std::size_t checked_power(std::size_t n, std::size_t d, const std::string& what) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (n != 0 && out > SIZE_MAX / n) throw SizeCapExceeded(what, SIZE_MAX, size_cap());
    out *= n;
  }
  enforce_size_cap(what, out);
  return out;
}

void check_monomial(const Window& window, const std::vector<Index>& monomial) {
  for (Index i : monomial) {
    if (!window.contains(i)) throw std::out_of_range("monomial uses index " + std::to_string(i) + " outside the window");
  }
}

}  // namespace

TensorLift::TensorLift(AlmostRep base, std::size_t degree) : base_(std::move(base)), degree_(degree) {
  const Field field = base_.field();
  const std::size_t n = base_.carrier_dim();
  size_ = checked_power(n, degree_, "tensor power N^" + std::to_string(degree_));
  if (degree_ == 0) {
    images_.assign(base_.window().size(), ExactMatrix(field, 1, 1));
    return;
  }
  images_ = base_.images();
  std::size_t current = n;
  const ExactMatrix id_n = ExactMatrix::identity(field, n);
  for (std::size_t k = 2; k <= degree_; ++k) {
    const ExactMatrix id_prev = ExactMatrix::identity(field, current);
    for (std::size_t w = 0; w < images_.size(); ++w) {
      images_[w] = kron(images_[w], id_n) + kron(id_prev, base_.images()[w]);
    }
    current *= n;
  }
}

const ExactMatrix& TensorLift::image(Index i) const {
  const auto pos = base_.window().position(i);
  if (!pos) throw std::out_of_range("index " + std::to_string(i) + " is not in the window");
  return images_[*pos];
}

TensorLift tensor_lift(const AlmostRep& base, std::size_t degree) { return TensorLift(base, degree); }

ExactMatrix monomial_image(const TensorLift& lift, const std::vector<Index>& monomial) {
  check_monomial(lift.base().window(), monomial);
  ExactMatrix out = ExactMatrix::identity(lift.base().field(), lift.size());
  for (Index i : monomial) out = out * lift.image(i);
  return out;
}

ExactMatrix symmetrized_tensor(const AlmostRep& base, const std::vector<Index>& monomial) {
  const std::size_t d = monomial.size();
  if (d == 0) throw std::invalid_argument("symmetrized_tensor: monomial must have degree >= 1");
  if (d > 10) throw std::invalid_argument("symmetrized_tensor: degree above 10 is not supported");
  check_monomial(base.window(), monomial);
  const std::size_t size = checked_power(base.carrier_dim(), d, "symmetrized tensor N^" + std::to_string(d));
  const Field field = base.field();
  ExactMatrix out(field, size, size);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  do {
    ExactMatrix term = ExactMatrix::identity(field, 1);
    for (std::size_t k : order) term = kron(term, base.image(monomial[k]));
    out = out + term;
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

ExactMatrix place_identities(const ExactMatrix& m, std::size_t n, std::size_t d,
                             const std::vector<std::size_t>& identity_slots) {
  std::vector<bool> is_identity(d, false);
  for (std::size_t s : identity_slots) {
    if (s >= d) throw std::out_of_range("identity slot " + std::to_string(s) + " out of range");
    if (is_identity[s]) throw std::invalid_argument("identity slot listed twice");
    is_identity[s] = true;
  }
  const std::size_t k = identity_slots.size();
  const std::size_t inner = checked_power(n, d - k, "placed operator");
  if (m.rows() != inner || m.cols() != inner) {
    throw std::invalid_argument("place_identities: operator must be N^(d-k) square");
  }
  const std::size_t size = checked_power(n, d, "placed operator");
  const std::size_t copies = checked_power(n, k, "placed operator");

  // Slot 0 is the most significant digit, matching kron(A, B).
  auto spread = [&](std::size_t compressed, std::size_t fill) {
    std::vector<std::size_t> digits(d, 0);
    for (std::size_t s = d; s-- > 0;) {
      if (is_identity[s]) {
        digits[s] = fill % n;
        fill /= n;
      } else {
        digits[s] = compressed % n;
        compressed /= n;
      }
    }
    std::size_t out = 0;
    for (std::size_t s = 0; s < d; ++s) out = out * n + digits[s];
    return out;
  };

  std::vector<Entry> entries;
  entries.reserve(m.nnz() * copies);
  for (const auto& e : m.entries()) {
    for (std::size_t fill = 0; fill < copies; ++fill) entries.push_back({spread(e.row, fill), spread(e.col, fill), e.value});
  }
  return ExactMatrix::from_entries(m.field(), size, size, std::move(entries));
}

ExactMatrix single_identity_placements(const AlmostRep& base, const std::vector<Index>& monomial) {
  const std::size_t d = monomial.size();
  if (d == 0) throw std::invalid_argument("single_identity_placements: monomial must have degree >= 1");
  const std::size_t n = base.carrier_dim();
  const ExactMatrix lower = monomial_image(tensor_lift(base, d - 1), monomial);
  ExactMatrix out(base.field(), checked_power(n, d, "placements"), checked_power(n, d, "placements"));
  for (std::size_t s = 0; s < d; ++s) out = out + place_identities(lower, n, d, {s});
  return out;
}

ExactMatrix low_order_part(const AlmostRep& base, const std::vector<Index>& monomial) {
  const std::size_t d = monomial.size();
  if (d == 0) throw std::invalid_argument("low_order_part: monomial must have degree >= 1");
  if (d > 16) throw std::invalid_argument("low_order_part: degree above 16 is not supported");
  const std::size_t n = base.carrier_dim();
  const Field field = base.field();
  const std::size_t size = checked_power(n, d, "low-order part");

  std::vector<ExactMatrix> lower;
  for (std::size_t k = 0; k < d; ++k) lower.push_back(monomial_image(tensor_lift(base, k), monomial));

  ExactMatrix out(field, size, size);
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    std::vector<std::size_t> slots;
    for (std::size_t s = 0; s < d; ++s)
      if (mask & (std::size_t{1} << s)) slots.push_back(s);
    const ExactMatrix placed = place_identities(lower[d - slots.size()], n, d, slots);
    out = slots.size() % 2 == 1 ? out + placed : out - placed;
  }
  return out;
}

ExactMatrix leading_term(const AlmostRep& base, const std::vector<Index>& monomial) {
  const ExactMatrix full = monomial_image(tensor_lift(base, monomial.size()), monomial);
  return full - low_order_part(base, monomial);
}

std::vector<std::vector<Index>> pbw_monomial_window(const Window& window, std::size_t degree) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> current;
  const std::size_t w = window.size();
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from, std::size_t remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t p = from; p < w; ++p) {
      current.push_back(window.basis()[p]);
      extend(p, remaining - 1);
      current.pop_back();
    }
  };
  for (std::size_t deg = 0; deg <= degree; ++deg) extend(0, deg);
  return out;
}

InjectivityReport injectivity_check(const AlmostRep& base, std::size_t degree) {
  const Field field = base.field();
  const std::size_t n = base.carrier_dim();

  std::vector<Entry> flat;
  for (std::size_t w = 0; w < base.images().size(); ++w) {
    for (const auto& e : base.images()[w].entries()) flat.push_back({e.row * n + e.col, w, e.value});
  }
  const ExactMatrix stacked = ExactMatrix::from_entries(field, n * n, base.images().size(), std::move(flat));
  if (rank(stacked) != base.images().size()) {
    throw std::invalid_argument("injectivity_check: base images are linearly dependent, so the lift cannot be injective");
  }

  std::vector<TensorLift> lifts;
  std::vector<std::size_t> offsets{0};
  for (std::size_t i = 0; i <= degree; ++i) {
    lifts.push_back(tensor_lift(base, i));
    offsets.push_back(offsets.back() + lifts.back().size() * lifts.back().size());
  }
  const auto monomials = pbw_monomial_window(base.window(), degree);
  std::vector<Entry> entries;
  for (std::size_t col = 0; col < monomials.size(); ++col) {
    for (std::size_t i = 0; i <= degree; ++i) {
      const ExactMatrix img = monomial_image(lifts[i], monomials[col]);
      const std::size_t s = lifts[i].size();
      for (const auto& e : img.entries()) entries.push_back({offsets[i] + e.row * s + e.col, col, e.value});
    }
  }
  const ExactMatrix map = ExactMatrix::from_entries(field, offsets.back(), monomials.size(), std::move(entries));
  InjectivityReport report;
  report.rank = rank(map);
  report.monomial_count = monomials.size();
  report.injective = report.rank == report.monomial_count;
  report.degree = degree;
  report.field = field;
  return report;
}

AlmostRep standard_rep(PresentationPtr presentation) {
  const Field field = presentation->field();
  const std::string name = presentation->descriptor().value("name", std::string());
  if (name == "sl2") {
    return AlmostRep(make_window(presentation, {1, 2, 3}), 2,
                     {ExactMatrix::from_integers(field, {{0, 1}, {0, 0}}),
                      ExactMatrix::from_integers(field, {{1, 0}, {0, -1}}),
                      ExactMatrix::from_integers(field, {{0, 0}, {1, 0}})});
  }
  if (name == "heisenberg") {
    auto unit = [&](std::size_t r, std::size_t c) {
      return ExactMatrix::from_entries(field, 3, 3, {{r, c, Scalar(field, 1)}});
    };
    return AlmostRep(make_window(presentation, {1, 2, 3}), 3, {unit(0, 1), unit(1, 2), unit(0, 2)});
  }
  if (name == "abelian") {
    const auto& basis = *presentation->finite_basis();
    const std::size_t k = basis.size();
    std::vector<ExactMatrix> images;
    for (std::size_t i = 0; i < k; ++i) images.push_back(ExactMatrix::from_entries(field, k, k, {{i, i, Scalar(field, 1)}}));
    return AlmostRep(make_window(presentation, basis), k, std::move(images));
  }
  throw std::invalid_argument("no standard representation for " + presentation->name() +
                              " (available: sl2, heisenberg, abelian:K)");
}

}  // namespace soficlab
