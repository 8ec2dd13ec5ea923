#include "soficlab/growth.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "soficlab/config.hpp"

namespace soficlab {

namespace {

// Incremental row echelon form over combinations that remembers how each
// stored row is written in terms of the vectors added so far.
class SpanSolver {
 public:
  explicit SpanSolver(Field field) : field_(field) {}

  struct Reduction {
    Combination residual;
    Combination coords;  // keyed by 0-based position of the added vectors
  };

  Reduction reduce(const Combination& v) const {
    Reduction out{v, {}};
    for (const auto& row : rows_) {
      const Scalar a = out.residual.coefficient(field_, row.pivot);
      if (a.is_zero()) continue;
      out.residual += row.vec.scaled(-a);
      out.coords += row.expr.scaled(a);
    }
    return out;
  }

  bool add(const Combination& v) {
    Reduction red = reduce(v);
    if (red.residual.is_zero()) return false;
    const auto& [pivot, lead] = *red.residual.terms().begin();
    const Scalar scale = lead.inverse();
    Combination expr = Combination::basis(field_, static_cast<Index>(count_)) + red.coords.scaled(Scalar(field_, -1));
    rows_.push_back({pivot, red.residual.scaled(scale), expr.scaled(scale)});
    ++count_;
    return true;
  }

 private:
  struct Row {
    Index pivot;
    Combination vec;
    Combination expr;
  };
  Field field_;
  std::vector<Row> rows_;
  std::size_t count_ = 0;
};

void check_representable(const LiePresentation& pres, const Combination& v, Index radius) {
  for (const auto& [k, c] : v.terms()) {
    if (!pres.contains(k)) throw std::range_error("span computation left the index set at " + std::to_string(k));
    if (!pres.finite_basis() && !pres.is_central(k) && (k > radius || k < -radius)) {
      throw std::range_error("span computation escapes the index radius " + std::to_string(radius) + " (reached " +
                             pres.label(k) + "); raise the radius or lower the level bound");
    }
  }
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("PBW dimension overflows 64 bits");
  return out;
}

// Number of filtered basis elements of length <= level; throws if the table
// does not reach that level.
std::size_t elements_up_to(const FiltrationTable& table, std::size_t level, const char* who) {
  if (!table.stabilized && level > table.levels()) {
    throw std::out_of_range(std::string(who) + " needs the filtration through level " + std::to_string(level) +
                            ", but the table stops at level " + std::to_string(table.levels()) +
                            " without stabilising");
  }
  return table.lie_dim(level);
}

}  // namespace

// --- PBW straightening -----------------------------------------------------

PbwStraightener::PbwStraightener(PresentationPtr presentation) : presentation_(std::move(presentation)) {}

const PbwVector& PbwStraightener::multiply(Index i, const PbwMonomial& monomial) {
  const auto key = std::make_pair(i, monomial);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  PbwVector result = compute(i, monomial);
  return memo_.emplace(key, std::move(result)).first->second;
}

PbwVector PbwStraightener::multiply(Index i, const PbwVector& v) {
  PbwVector out;
  for (const auto& [mono, c] : v) {
    for (const auto& [m2, c2] : multiply(i, mono)) {
      auto [it, inserted] = out.try_emplace(m2, c2 * c);
      if (!inserted) {
        it->second += c2 * c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

// x_i x_j rest = x_j (x_i rest) + [x_i, x_j] rest when i > j.
PbwVector PbwStraightener::compute(Index i, const PbwMonomial& monomial) {
  const Field& field = presentation_->field();
  if (monomial.empty() || i <= monomial.front()) {
    PbwMonomial out{i};
    out.insert(out.end(), monomial.begin(), monomial.end());
    return {{std::move(out), Scalar(field, 1)}};
  }
  const Index j = monomial.front();
  const PbwMonomial rest(monomial.begin() + 1, monomial.end());
  const PbwVector moved = multiply(i, rest);
  PbwVector out = multiply(j, moved);
  const Combination bracket = presentation_->bracket(i, j);
  for (const auto& [k, c] : bracket.terms()) {
    for (const auto& [mono, c2] : multiply(k, rest)) {
      auto [it, inserted] = out.try_emplace(mono, c2 * c);
      if (!inserted) {
        it->second += c2 * c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

// --- filtration ------------------------------------------------------------

std::size_t FiltrationTable::lie_dim(std::size_t n) const {
  if (n < lie_dims.size()) return lie_dims[n];
  if (stabilized && !lie_dims.empty()) return lie_dims.back();
  throw std::out_of_range("filtration level " + std::to_string(n) + " was not computed");
}

namespace {

PresentationPtr make_filtered(const FiltrationTable& table, std::shared_ptr<const SpanSolver> solver) {
  const LiePresentation& base = *table.base;
  const Field field = base.field();
  const std::size_t dim = table.basis.size();

  std::vector<Index> indices;
  std::set<Index> central;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < dim; ++k) {
    const Index idx = static_cast<Index>(k + 1);
    indices.push_back(idx);
    const auto& terms = table.basis[k].terms();
    bool all_central = true;
    for (const auto& [i, c] : terms) all_central = all_central && base.is_central(i);
    if (all_central) central.insert(idx);
    if (terms.size() == 1 && terms.begin()->second.is_one()) {
      labels.push_back(base.label(terms.begin()->first));
    } else {
      labels.push_back("y_" + std::to_string(idx));
    }
  }

  json descriptor = {{"name", "filtered"},
                     {"base", base.descriptor()},
                     {"gens", table.generators},
                     {"levels", table.levels()},
                     {"radius", table.radius}};

  auto cache = std::make_shared<std::map<std::pair<Index, Index>, Combination>>();
  auto basis = std::make_shared<std::vector<Combination>>(table.basis);
  PresentationPtr base_ptr = table.base;
  const std::size_t levels = table.levels();
  return std::make_shared<LiePresentation>(LiePresentation::Definition{
      .name = base.name(),
      .descriptor = std::move(descriptor),
      .field = field,
      .bracket =
          [cache, basis, solver, base_ptr, field, levels](Index a, Index b) {
            auto it = cache->find({a, b});
            if (it != cache->end()) return it->second;
            const Combination c =
                base_ptr->bracket((*basis)[static_cast<std::size_t>(a - 1)], (*basis)[static_cast<std::size_t>(b - 1)]);
            const auto red = solver->reduce(c);
            if (!red.residual.is_zero()) {
              throw std::range_error("bracket [y_" + std::to_string(a) + ", y_" + std::to_string(b) +
                                     "] leaves the filtration computed through level " + std::to_string(levels));
            }
            Combination out;
            for (const auto& [k, coeff] : red.coords.terms()) out.add(k + 1, coeff);
            cache->emplace(std::make_pair(a, b), out);
            return out;
          },
      .contains = [dim](Index i) { return i >= 1 && static_cast<std::size_t>(i) <= dim; },
      .central = std::move(central),
      .label = [labels](Index i) { return labels.at(static_cast<std::size_t>(i - 1)); },
      .finite_basis = indices,
  });
}

}  // namespace

FiltrationTable lie_filtration(PresentationPtr presentation, std::vector<Index> generators, std::size_t n_max,
                               Index radius) {
  if (!presentation) throw std::invalid_argument("lie_filtration: null presentation");
  if (generators.empty()) throw std::invalid_argument("lie_filtration: need at least one generator");
  if (n_max < 1) throw std::invalid_argument("lie_filtration: need n_max >= 1");
  if (radius < 0) throw std::invalid_argument("lie_filtration: radius must be non-negative");
  const LiePresentation& pres = *presentation;
  const Field field = pres.field();
  for (Index g : generators) {
    if (!pres.contains(g)) throw std::out_of_range("generator " + std::to_string(g) + " is not in " + pres.name());
  }

  FiltrationTable table;
  table.base = presentation;
  table.generators = generators;
  table.radius = radius;
  table.lie_dims.push_back(0);
  auto solver = std::make_shared<SpanSolver>(field);

  auto offer = [&](const Combination& v, std::size_t level, std::vector<std::size_t>& fresh) {
    check_representable(pres, v, radius);
    if (solver->add(v)) {
      fresh.push_back(table.basis.size());
      table.basis.push_back(v);
      table.basis_lengths.push_back(level);
    }
  };

  std::vector<std::size_t> previous;
  for (Index g : generators) offer(Combination::basis(field, g), 1, previous);
  table.lie_dims.push_back(table.basis.size());

  for (std::size_t level = 2; level <= n_max; ++level) {
    if (table.stabilized) {
      table.lie_dims.push_back(table.basis.size());
      continue;
    }
    std::vector<std::size_t> fresh;
    for (Index g : generators) {
      const Combination gen = Combination::basis(field, g);
      for (std::size_t b : previous) offer(pres.bracket(gen, table.basis[b]), level, fresh);
    }
    table.lie_dims.push_back(table.basis.size());
    // V_level = V_{level-1} forces every later level to agree.
    if (fresh.empty()) table.stabilized = true;
    previous = std::move(fresh);
  }
  if (!table.stabilized && previous.empty()) table.stabilized = true;
  // One more bracket round decides stabilisation at the last level.
  if (!table.stabilized) {
    SpanSolver probe = *solver;
    bool grows = false;
    for (Index g : generators) {
      const Combination gen = Combination::basis(field, g);
      for (std::size_t b : previous) {
        if (probe.reduce(pres.bracket(gen, table.basis[b])).residual.is_zero()) continue;
        grows = true;
        break;
      }
      if (grows) break;
    }
    table.stabilized = !grows;
  }
  table.filtered = make_filtered(table, solver);
  return table;
}

// --- PBW dimensions --------------------------------------------------------

std::vector<std::uint64_t> pbw_dims(const FiltrationTable& table, std::size_t n_max) {
  const std::size_t count = elements_up_to(table, n_max, "pbw_dims");
  std::vector<std::uint64_t> exact(n_max + 1, 0);
  exact[0] = 1;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t len = table.basis_lengths[k];
    for (std::size_t w = len; w <= n_max; ++w) exact[w] = checked_add(exact[w], exact[w - len]);
  }
  std::vector<std::uint64_t> cumulative(n_max + 1, 0);
  std::uint64_t running = 0;
  for (std::size_t w = 0; w <= n_max; ++w) {
    running = checked_add(running, exact[w]);
    cumulative[w] = running;
  }
  return cumulative;
}

std::vector<PbwMonomial> pbw_carrier(const FiltrationTable& table, std::size_t m) {
  const std::size_t count = elements_up_to(table, m, "pbw_carrier");
  const auto expected = pbw_dims(table, m)[m];
  enforce_size_cap("PBW carrier W_" + std::to_string(m), static_cast<std::size_t>(expected));

  std::vector<std::pair<std::size_t, PbwMonomial>> found;
  PbwMonomial current;
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from, std::size_t used) {
    found.emplace_back(used, current);
    for (std::size_t k = from; k < count; ++k) {
      const std::size_t len = table.basis_lengths[k];
      if (used + len > m) continue;
      current.push_back(static_cast<Index>(k + 1));
      extend(k, used + len);
      current.pop_back();
    }
  };
  extend(0, 0);
  std::sort(found.begin(), found.end());
  std::vector<PbwMonomial> out;
  out.reserve(found.size());
  for (auto& [len, mono] : found) out.push_back(std::move(mono));
  return out;
}

AlmostRep left_mult_rep(const FiltrationTable& table, std::size_t n, std::size_t m) {
  if (n < 1 || m <= n) throw std::invalid_argument("left_mult_rep: need m > n >= 1");
  elements_up_to(table, m + n, "left_mult_rep");
  const Field field = table.base->field();

  const std::vector<PbwMonomial> carrier = pbw_carrier(table, m);
  std::map<PbwMonomial, std::size_t> position;
  for (std::size_t k = 0; k < carrier.size(); ++k) position.emplace(carrier[k], k);

  std::vector<Index> indices;
  for (std::size_t k = 1; k <= table.lie_dim(n); ++k) indices.push_back(static_cast<Index>(k));
  Window window = make_window(table.filtered, indices);

  PbwStraightener straightener(table.filtered);
  const std::size_t dim = carrier.size();
  std::vector<ExactMatrix> images;
  for (Index i : indices) {
    std::vector<Entry> entries;
    for (std::size_t col = 0; col < dim; ++col) {
      for (const auto& [mono, c] : straightener.multiply(i, carrier[col])) {
        auto it = position.find(mono);
        if (it != position.end()) entries.push_back({it->second, col, c});
      }
    }
    images.push_back(ExactMatrix::from_entries(field, dim, dim, std::move(entries)));
  }
  return AlmostRep(std::move(window), dim, std::move(images));
}

std::vector<Rational> growth_ratio_table(const FiltrationTable& table, std::size_t n, std::size_t m_lo,
                                         std::size_t m_hi) {
  if (m_lo > m_hi) throw std::invalid_argument("growth_ratio_table: empty range");
  const auto gamma = pbw_dims(table, m_hi);
  std::vector<Rational> out;
  for (std::size_t m = m_lo; m <= m_hi; ++m) {
    const mpz_class top(static_cast<unsigned long>(gamma[m]));
    const mpz_class low(m >= n ? static_cast<unsigned long>(gamma[m - n]) : 0UL);
    Rational r(top - low, top);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

GrowthDiagnostics diagnose_growth(std::span<const Rational> ratios, const Rational& threshold, std::size_t tail) {
  GrowthDiagnostics out;
  if (ratios.empty() || tail == 0) return out;
  const std::size_t start = ratios.size() > tail ? ratios.size() - tail : 0;
  for (std::size_t k = start + 1; k < ratios.size(); ++k) {
    if (ratios[k] > ratios[k - 1]) out.tail_non_increasing = false;
  }
  out.stalls_above_threshold = ratios.size() >= tail;
  for (std::size_t k = start; k < ratios.size(); ++k) {
    if (ratios[k] < threshold) out.stalls_above_threshold = false;
  }
  return out;
}

std::vector<Index> default_generators(const LiePresentation& presentation) {
  const std::string name = presentation.descriptor().value("name", std::string());
  if (name == "heisenberg") return {1, 2};
  if (name == "sl2") return {1, 3};
  if (name == "witt" || name == "virasoro") return {-2, -1, 1, 2};
  if (presentation.finite_basis()) return *presentation.finite_basis();
  throw std::invalid_argument("no default generators for " + presentation.name() + "; pass them explicitly");
}

PresentationPtr filtered_from_descriptor(Field field, const json& descriptor) {
  if (descriptor.value("name", std::string()) != "filtered") {
    throw std::invalid_argument("not a filtered presentation descriptor");
  }
  PresentationPtr base = presentation_from_descriptor(field, descriptor.at("base"));
  const auto table = lie_filtration(base, descriptor.at("gens").get<std::vector<Index>>(),
                                    descriptor.at("levels").get<std::size_t>(), descriptor.at("radius").get<Index>());
  return table.filtered;
}

PresentationPtr presentation_from_descriptor(Field field, const json& descriptor) {
  if (descriptor.is_object() && descriptor.value("name", std::string()) == "filtered") {
    return filtered_from_descriptor(field, descriptor);
  }
  return builtin_from_descriptor(field, descriptor);
}

}  // namespace soficlab
