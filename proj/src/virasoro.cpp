#include "soficlab/virasoro.hpp"

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace soficlab {

bool is_verma_monomial(const VermaMonomial& parts) {
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] < 1) return false;
    if (k > 0 && parts[k] > parts[k - 1]) return false;
  }
  return true;
}

VermaWindow::VermaWindow(std::size_t m, std::size_t d) : m_(m), d_(d) {
  VermaMonomial current;
  // Parts are generated in lexicographic order within each length.
  std::function<void(std::size_t, Index)> extend = [&](std::size_t remaining, Index cap) {
    if (remaining == 0) {
      positions_.emplace(current, basis_.size());
      basis_.push_back(current);
      return;
    }
    for (Index p = 1; p <= cap; ++p) {
      current.push_back(p);
      extend(remaining - 1, p);
      current.pop_back();
    }
  };
  for (std::size_t len = 0; len <= d; ++len) {
    if (len > 0 && m == 0) break;
    extend(len, static_cast<Index>(m));
  }
}

std::optional<std::size_t> VermaWindow::position(const VermaMonomial& v) const {
  auto it = positions_.find(v);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t verma_dim(std::size_t m, std::size_t d) {
  // binomial(m + d, d)
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), m + d, d);
  if (!result.fits_ulong_p()) throw std::overflow_error("verma_dim overflows 64 bits");
  return result.get_ui();
}

VermaModule::VermaModule(Field field, HighestWeight weight) : field_(field), weight_(std::move(weight)) {
  if (!(weight_.h.field() == field_) || !(weight_.z.field() == field_)) {
    throw std::invalid_argument("highest weight does not live in the module's field");
  }
  if (!field_.is_rational() && field_.characteristic() <= 3) {
    throw std::invalid_argument("the Virasoro cocycle needs characteristic 0 or p > 3");
  }
}

void VermaModule::add_scaled(VermaVector& acc, const VermaVector& term, const Scalar& factor) {
  if (factor.is_zero()) return;
  for (const auto& [mono, c] : term) {
    auto [it, inserted] = acc.try_emplace(mono, c * factor);
    if (!inserted) {
      it->second += c * factor;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

const VermaVector& VermaModule::apply(Index r, const VermaMonomial& v) {
  if (r == kVirasoroCentral) throw std::invalid_argument("normal ordering: the central element acts by z, not as a mode");
  if (!is_verma_monomial(v)) throw std::invalid_argument("not a Verma monomial (parts must be positive and weakly decreasing)");
  const auto key = std::make_pair(r, v);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  VermaVector result = compute(r, v);
  return memo_.emplace(key, std::move(result)).first->second;
}

// x_r x_{-i} rest = x_{-i} (x_r rest) + [x_r, x_{-i}] rest with
// [x_r, x_{-i}] = (r + i) x_{r-i} + delta_{r,i} (r^3 - r)/12 c.
VermaVector VermaModule::compute(Index r, const VermaMonomial& v) {
  const Scalar one(field_, 1);
  VermaVector out;
  if (v.empty()) {
    if (r < 0) out.emplace(VermaMonomial{-r}, one);
    if (r == 0 && !weight_.h.is_zero()) out.emplace(VermaMonomial{}, weight_.h);
    return out;
  }
  const Index lead = v.front();
  if (r < 0 && -r >= lead) {
    VermaMonomial w;
    w.reserve(v.size() + 1);
    w.push_back(-r);
    w.insert(w.end(), v.begin(), v.end());
    out.emplace(std::move(w), one);
    return out;
  }
  const VermaMonomial rest(v.begin() + 1, v.end());

  const VermaVector inner = apply(r, rest);
  for (const auto& [mono, c] : inner) add_scaled(out, apply(-lead, mono), c);

  if (r + lead != 0) add_scaled(out, apply(r - lead, rest), Scalar(field_, static_cast<long long>(r + lead)));

  if (r == lead) {
    const mpz_class rr(static_cast<long>(r));
    const Scalar cocycle(field_, Rational(rr * rr * rr - rr, 12));
    add_scaled(out, VermaVector{{rest, one}}, cocycle * weight_.z);
  }
  return out;
}

VermaVector normal_order_apply(Index r, const VermaMonomial& v, const HighestWeight& weight,
                               const VermaWindow& window) {
  VermaModule module(weight.h.field(), weight);
  VermaVector out;
  for (const auto& [mono, c] : module.apply(r, v)) {
    if (window.contains(mono)) out.emplace(mono, c);
  }
  return out;
}

AlmostRep virasoro_rep(std::size_t n, std::size_t m, std::size_t d, const HighestWeight& weight) {
  if (n < 1 || m < n) throw std::invalid_argument("virasoro_rep: need m >= n >= 1");
  if (d < 1) throw std::invalid_argument("virasoro_rep: need d >= 1");
  const Field field = weight.h.field();
  VermaModule module(field, weight);
  const VermaWindow carrier(m, d);

  std::vector<Index> indices;
  const Index nn = static_cast<Index>(n);
  for (Index r = -nn; r <= nn; ++r) indices.push_back(r);
  indices.push_back(kVirasoroCentral);
  Window window = make_window(virasoro(field), indices);

  const std::size_t dim = carrier.dim();
  std::vector<ExactMatrix> images;
  for (Index r : indices) {
    if (r == kVirasoroCentral) {
      images.push_back(ExactMatrix::identity(field, dim).scaled(weight.z));
      continue;
    }
    std::vector<Entry> entries;
    for (std::size_t col = 0; col < dim; ++col) {
      for (const auto& [mono, c] : module.apply(r, carrier.basis()[col])) {
        if (auto row = carrier.position(mono)) entries.push_back({*row, col, c});
      }
    }
    images.push_back(ExactMatrix::from_entries(field, dim, dim, std::move(entries)));
  }
  return AlmostRep(std::move(window), dim, std::move(images));
}

}  // namespace soficlab
