#include "soficlab/lie.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace soficlab {

// --- Combination -----------------------------------------------------------

Combination Combination::basis(Field field, Index i) {
  Combination c;
  c.add(i, Scalar(field, 1));
  return c;
}

void Combination::add(Index i, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(i, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Combination& Combination::operator+=(const Combination& rhs) {
  for (const auto& [i, c] : rhs.terms_) add(i, c);
  return *this;
}

Combination Combination::scaled(const Scalar& factor) const {
  Combination out;
  if (factor.is_zero()) return out;
  for (const auto& [i, c] : terms_) out.terms_.emplace(i, c * factor);
  return out;
}

Scalar Combination::coefficient(Field field, Index i) const {
  auto it = terms_.find(i);
  return it == terms_.end() ? Scalar(field) : it->second;
}

std::set<Index> Combination::support() const {
  std::set<Index> s;
  for (const auto& [i, c] : terms_) s.insert(i);
  return s;
}

std::string Combination::to_string(const std::function<std::string(Index)>& label) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    std::string coeff = c.field().is_rational() ? c.rational().get_str() : std::to_string(c.residue());
    const bool negative = coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (coeff != "1") out << coeff << "*";
    out << (label ? label(i) : "x_" + std::to_string(i));
  }
  return out.str();
}

// --- LiePresentation -------------------------------------------------------

LiePresentation::LiePresentation(Definition def) : def_(std::move(def)) {
  if (!def_.bracket || !def_.contains) throw std::invalid_argument("presentation needs a bracket and an index set");
}

std::string LiePresentation::label(Index i) const {
  if (def_.label) return def_.label(i);
  return "x_" + std::to_string(i);
}

Combination LiePresentation::bracket(Index i, Index j) const {
  if (!contains(i) || !contains(j)) {
    throw std::out_of_range("index pair (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside the index set of " + def_.name);
  }
  return def_.bracket(i, j);
}

Combination LiePresentation::bracket(const Combination& a, const Combination& b) const {
  Combination out;
  for (const auto& [i, ci] : a.terms()) {
    for (const auto& [j, cj] : b.terms()) out += bracket(i, j).scaled(ci * cj);
  }
  return out;
}

// --- built-in algebras -----------------------------------------------------

namespace {

std::function<bool(Index)> range_contains(Index lo, Index hi) {
  return [lo, hi](Index i) { return i >= lo && i <= hi; };
}

std::vector<Index> iota_basis(Index lo, Index hi) {
  std::vector<Index> out;
  for (Index i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

Scalar coefficient_from_json(Field field, const json& value) {
  if (value.is_number_integer()) return Scalar(field, value.get<long long>());
  if (value.is_string()) return Scalar(field, parse_rational(value.get<std::string>()));
  throw std::invalid_argument("structure constant must be an integer or a \"num/den\" string: " + value.dump());
}

}  // namespace

PresentationPtr abelian(Field field, int k) {
  if (k < 1) throw std::invalid_argument("abelian algebra needs dimension >= 1");
  std::set<Index> central;
  for (Index i = 1; i <= k; ++i) central.insert(i);
  return std::make_shared<LiePresentation>(LiePresentation::Definition{
      .name = "abelian",
      .descriptor = {{"name", "abelian"}, {"k", k}},
      .field = field,
      .bracket = [](Index, Index) { return Combination{}; },
      .contains = range_contains(1, k),
      .central = std::move(central),
      .label = {},
      .finite_basis = iota_basis(1, k),
  });
}

PresentationPtr heisenberg(Field field) {
  return std::make_shared<LiePresentation>(LiePresentation::Definition{
      .name = "heisenberg",
      .descriptor = {{"name", "heisenberg"}},
      .field = field,
      .bracket =
          [field](Index i, Index j) {
            Combination c;
            if (i == 1 && j == 2) c.add(3, Scalar(field, 1));
            if (i == 2 && j == 1) c.add(3, Scalar(field, -1));
            return c;
          },
      .contains = range_contains(1, 3),
      .central = {3},
      .label = [](Index i) { return std::string(1, "?xyz"[i]); },
      .finite_basis = iota_basis(1, 3),
  });
}

PresentationPtr sl2(Field field) {
  constexpr Index e = 1, h = 2, f = 3;
  return std::make_shared<LiePresentation>(LiePresentation::Definition{
      .name = "sl2",
      .descriptor = {{"name", "sl2"}},
      .field = field,
      .bracket =
          [field](Index i, Index j) {
            Combination c;
            auto set = [&](Index a, Index b, Index target, long long coeff) {
              if (i == a && j == b) c.add(target, Scalar(field, coeff));
              if (i == b && j == a) c.add(target, Scalar(field, -coeff));
            };
            set(e, f, h, 1);
            set(h, e, e, 2);
            set(h, f, f, -2);
            return c;
          },
      .contains = range_contains(1, 3),
      .central = {},
      .label = [](Index i) { return std::string(1, "?ehf"[i]); },
      .finite_basis = iota_basis(1, 3),
  });
}

PresentationPtr witt(Field field) {
  constexpr Index bound = Index{1} << 40;
  return std::make_shared<LiePresentation>(LiePresentation::Definition{
      .name = "witt",
      .descriptor = {{"name", "witt"}},
      .field = field,
      .bracket =
          [field](Index i, Index j) {
            Combination c;
            c.add(i + j, Scalar(field, static_cast<long long>(i - j)));
            return c;
          },
      .contains = range_contains(-bound, bound),
      .central = {},
      .label = {},
      .finite_basis = std::nullopt,
  });
}

PresentationPtr virasoro(Field field) {
  if (!field.is_rational() && field.characteristic() <= 3) {
    throw std::invalid_argument("the Virasoro cocycle (m^3 - m)/12 needs characteristic 0 or p > 3");
  }
  return std::make_shared<LiePresentation>(LiePresentation::Definition{
      .name = "virasoro",
      .descriptor = {{"name", "virasoro"}},
      .field = field,
      .bracket =
          [field](Index i, Index j) {
            Combination c;
            if (i == kVirasoroCentral || j == kVirasoroCentral) return c;
            c.add(i + j, Scalar(field, static_cast<long long>(i - j)));
            if (i + j == 0) {
              const mpz_class m(static_cast<long>(i));
              c.add(kVirasoroCentral, Scalar(field, Rational(m * m * m - m, 12)));
            }
            return c;
          },
      .contains = [](Index i) { return i == kVirasoroCentral || (i > -kVirasoroCentral && i < kVirasoroCentral); },
      .central = {kVirasoroCentral},
      .label = [](Index i) { return i == kVirasoroCentral ? std::string("c") : "x_" + std::to_string(i); },
      .finite_basis = std::nullopt,
  });
}

PresentationPtr from_table(Field field, const json& table) {
  if (!table.is_object() || !table.contains("brackets") || !table.contains("dim")) {
    throw std::invalid_argument("structure-constant table needs \"dim\" and \"brackets\"");
  }
  std::map<std::pair<Index, Index>, Combination> given;
  std::set<Index> seen;
  for (const auto& row : table.at("brackets")) {
    if (!row.is_array() || row.size() != 3) throw std::invalid_argument("bracket row must be [i, j, terms]: " + row.dump());
    const Index i = row[0].get<Index>();
    const Index j = row[1].get<Index>();
    Combination c;
    for (const auto& term : row[2]) {
      if (!term.is_array() || term.size() != 2) throw std::invalid_argument("bracket term must be [coeff, k]");
      const Index k = term[1].get<Index>();
      c.add(k, coefficient_from_json(field, term[0]));
      seen.insert(k);
    }
    seen.insert(i);
    seen.insert(j);
    given[{i, j}] = c;
  }

  std::vector<Index> basis;
  const json& dim = table.at("dim");
  if (dim.is_number_integer()) {
    basis = iota_basis(1, dim.get<Index>());
  } else if (dim == "indexed") {
    if (table.contains("indices")) {
      basis = table.at("indices").get<std::vector<Index>>();
    } else {
      basis.assign(seen.begin(), seen.end());
    }
  } else {
    throw std::invalid_argument("table \"dim\" must be an integer or \"indexed\"");
  }
  const std::set<Index> index_set(basis.begin(), basis.end());
  for (Index i : seen) {
    if (!index_set.contains(i)) throw std::invalid_argument("table mentions index " + std::to_string(i) + " outside its basis");
  }
  // Fill the missing half of each antisymmetric pair; pairs given both ways are
  // kept verbatim so sanity_check can catch inconsistent tables.
  auto brackets = given;
  for (const auto& [key, c] : given) {
    const std::pair<Index, Index> flipped{key.second, key.first};
    if (!given.contains(flipped)) brackets[flipped] = c.scaled(Scalar(field, -1));
  }
  std::set<Index> central;
  if (table.contains("central")) {
    for (const auto& c : table.at("central")) central.insert(c.get<Index>());
  }
  const std::string name = table.value("name", std::string("custom"));
  return std::make_shared<LiePresentation>(LiePresentation::Definition{
      .name = name,
      .descriptor = {{"name", "custom"}, {"table", table}},
      .field = field,
      .bracket =
          [brackets = std::move(brackets)](Index i, Index j) {
            auto it = brackets.find({i, j});
            return it == brackets.end() ? Combination{} : it->second;
          },
      .contains = [index_set](Index i) { return index_set.contains(i); },
      .central = std::move(central),
      .label = {},
      .finite_basis = basis,
  });
}

PresentationPtr builtin_from_descriptor(Field field, const json& descriptor) {
  const std::string name = descriptor.at("name").get<std::string>();
  if (name == "witt") return witt(field);
  if (name == "virasoro") return virasoro(field);
  if (name == "heisenberg") return heisenberg(field);
  if (name == "sl2") return sl2(field);
  if (name == "abelian") return abelian(field, descriptor.at("k").get<int>());
  if (name == "custom") return from_table(field, descriptor.at("table"));
  throw std::invalid_argument("unknown algebra '" + name + "'");
}

PresentationPtr presentation_by_name(Field field, const std::string& name) {
  if (name == "witt") return witt(field);
  if (name == "virasoro") return virasoro(field);
  if (name == "heisenberg") return heisenberg(field);
  if (name == "sl2") return sl2(field);
  if (name.rfind("abelian:", 0) == 0) {
    const std::string k = name.substr(8);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("abelian dimension must be a positive integer: '" + k + "'");
    }
    return abelian(field, std::stoi(k));
  }
  if (name.rfind("custom:", 0) == 0) {
    const std::string path = name.substr(7);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open structure-constant table '" + path + "'");
    return from_table(field, json::parse(in));
  }
  throw std::invalid_argument("unknown algebra '" + name + "'");
}

// --- windows ---------------------------------------------------------------

Window::Window(PresentationPtr presentation, std::vector<Index> basis, std::vector<CheckablePair> pairs)
    : presentation_(std::move(presentation)), basis_(std::move(basis)), pairs_(std::move(pairs)) {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (!positions_.emplace(basis_[k], k).second) {
      throw std::invalid_argument("window index " + std::to_string(basis_[k]) + " repeated");
    }
  }
}

std::optional<std::size_t> Window::position(Index i) const {
  auto it = positions_.find(i);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

bool Window::same_as(const Window& other) const {
  if (basis_ != other.basis_) return false;
  if (presentation_ == other.presentation_) return true;
  return presentation_ && other.presentation_ && presentation_->descriptor() == other.presentation_->descriptor() &&
         presentation_->field() == other.presentation_->field();
}

Window make_window(PresentationPtr presentation, std::vector<Index> indices) {
  if (!presentation) throw std::invalid_argument("make_window: null presentation");
  for (Index i : indices) {
    if (!presentation->contains(i)) {
      throw std::out_of_range("index " + std::to_string(i) + " is not in " + presentation->name());
    }
  }
  const std::set<Index> inside(indices.begin(), indices.end());
  if (inside.size() != indices.size()) throw std::invalid_argument("window indices must be distinct");
  std::vector<CheckablePair> pairs;
  for (Index i : indices) {
    for (Index j : indices) {
      Combination c = presentation->bracket(i, j);
      bool supported = true;
      for (const auto& [k, coeff] : c.terms()) supported = supported && inside.contains(k);
      if (supported) pairs.push_back({i, j, std::move(c)});
    }
  }
  return Window(std::move(presentation), std::move(indices), std::move(pairs));
}

SanityReport sanity_check(const LiePresentation& pres, std::span<const Index> indices) {
  auto label = [&](Index i) { return pres.label(i); };
  for (Index i : indices) {
    if (!pres.bracket(i, i).is_zero()) {
      return {false, "[" + label(i) + ", " + label(i) + "] != 0", {i, i}};
    }
  }
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      const Index i = indices[a];
      const Index j = indices[b];
      if (!(pres.bracket(i, j) + pres.bracket(j, i)).is_zero()) {
        return {false, "antisymmetry fails for (" + label(i) + ", " + label(j) + ")", {i, j}};
      }
    }
  }
  const Field field = pres.field();
  auto x = [&](Index i) { return Combination::basis(field, i); };
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      for (std::size_t c = b + 1; c < indices.size(); ++c) {
        const Index i = indices[a];
        const Index j = indices[b];
        const Index k = indices[c];
        Combination jac = pres.bracket(x(i), pres.bracket(j, k));
        jac += pres.bracket(x(j), pres.bracket(k, i));
        jac += pres.bracket(x(k), pres.bracket(i, j));
        if (!jac.is_zero()) {
          return {false,
                  "Jacobi identity fails for (" + label(i) + ", " + label(j) + ", " + label(k) +
                      "): sum = " + jac.to_string(label),
                  {i, j, k}};
        }
      }
    }
  }
  for (Index c : pres.central_indices()) {
    if (!pres.contains(c)) continue;
    for (Index j : indices) {
      if (!pres.bracket(c, j).is_zero()) {
        return {false, "central element " + label(c) + " does not commute with " + label(j), {c, j}};
      }
    }
  }
  return {true, "ok", {}};
}

}  // namespace soficlab
