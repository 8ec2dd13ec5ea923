#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "soficlab/field.hpp"

namespace soficlab {

using Index = std::int64_t;
using json = nlohmann::json;

/// Finite linear combination of basis indices. Zero coefficients are never stored.
class Combination {
 public:
  Combination() = default;
  static Combination basis(Field field, Index i);

  void add(Index i, const Scalar& coeff);
  Combination& operator+=(const Combination& rhs);
  Combination scaled(const Scalar& factor) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<Index, Scalar>& terms() const { return terms_; }
  Scalar coefficient(Field field, Index i) const;
  std::set<Index> support() const;

  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend bool operator==(const Combination& a, const Combination& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::function<std::string(Index)>& label = {}) const;

 private:
  std::map<Index, Scalar> terms_;
};

/// A Lie algebra given lazily by structure constants on an integer index set.
class LiePresentation {
 public:
  using BracketFn = std::function<Combination(Index, Index)>;
  using ContainsFn = std::function<bool(Index)>;
  using LabelFn = std::function<std::string(Index)>;

  struct Definition {
    std::string name;
    json descriptor;
    Field field;
    BracketFn bracket;
    ContainsFn contains;
    std::set<Index> central;
    LabelFn label;
    /// Present iff the algebra is finite-dimensional with this ordered basis.
    std::optional<std::vector<Index>> finite_basis;
  };

  explicit LiePresentation(Definition def);

  const std::string& name() const { return def_.name; }
  /// Name and parameters; enough to rebuild the presentation.
  const json& descriptor() const { return def_.descriptor; }
  const Field& field() const { return def_.field; }
  const std::set<Index>& central_indices() const { return def_.central; }
  const std::optional<std::vector<Index>>& finite_basis() const { return def_.finite_basis; }

  bool contains(Index i) const { return def_.contains(i); }
  bool is_central(Index i) const { return def_.central.contains(i); }
  std::string label(Index i) const;

  /// [x_i, x_j]; throws std::out_of_range for indices outside the presentation.
  Combination bracket(Index i, Index j) const;
  /// Bilinear extension to combinations.
  Combination bracket(const Combination& a, const Combination& b) const;

 private:
  Definition def_;
};

using PresentationPtr = std::shared_ptr<const LiePresentation>;

inline Combination bracket_eval(const LiePresentation& pres, Index i, Index j) { return pres.bracket(i, j); }

/// Index of the central element c in the Virasoro presentation.
inline constexpr Index kVirasoroCentral = 1'000'000'000;

/// Basis x_1..x_k, all brackets zero.
PresentationPtr abelian(Field field, int k);
/// x = 1, y = 2, z = 3 with [x, y] = z and z central.
PresentationPtr heisenberg(Field field);
/// e = 1, h = 2, f = 3 with [e, f] = h, [h, e] = 2e, [h, f] = -2f.
PresentationPtr sl2(Field field);
/// x_i for every integer i, [x_i, x_j] = (i - j) x_{i+j}.
PresentationPtr witt(Field field);
/// Witt plus the central element c (index kVirasoroCentral) with cocycle
/// (m^3 - m)/12 on [x_m, x_{-m}]. Needs characteristic 0 or p > 3.
PresentationPtr virasoro(Field field);
/// Structure-constant table {"dim": k | "indexed", "brackets": [[i, j, [[coeff, k], ...]], ...]}.
/// Optional keys: "name", "indices" (for "indexed"), "central".
PresentationPtr from_table(Field field, const json& table);

/// Rebuilds a built-in or custom presentation from its descriptor.
PresentationPtr builtin_from_descriptor(Field field, const json& descriptor);
/// CLI names: witt, virasoro, heisenberg, sl2, abelian:K, custom:PATH.
PresentationPtr presentation_by_name(Field field, const std::string& name);

struct CheckablePair {
  Index left;
  Index right;
  Combination bracket;
};

/// Finite ordered sub-basis of a presentation, with the basis pairs whose
/// bracket stays inside its span.
class Window {
 public:
  Window() = default;
  Window(PresentationPtr presentation, std::vector<Index> basis, std::vector<CheckablePair> pairs);

  const PresentationPtr& presentation() const { return presentation_; }
  const std::vector<Index>& basis() const { return basis_; }
  const std::vector<CheckablePair>& checkable_pairs() const { return pairs_; }
  std::size_t size() const { return basis_.size(); }
  std::optional<std::size_t> position(Index i) const;
  bool contains(Index i) const { return position(i).has_value(); }

  /// Same presentation descriptor and basis.
  bool same_as(const Window& other) const;

 private:
  PresentationPtr presentation_;
  std::vector<Index> basis_;
  std::vector<CheckablePair> pairs_;
  std::map<Index, std::size_t> positions_;
};

/// Throws std::invalid_argument for repeated or invalid indices.
Window make_window(PresentationPtr presentation, std::vector<Index> indices);

struct SanityReport {
  bool passed = true;
  std::string message;
  /// Offending indices (a pair or a triple) when the check fails.
  std::vector<Index> witness;
};

/// Antisymmetry, the Jacobi identity and centrality on the given indices.
SanityReport sanity_check(const LiePresentation& pres, std::span<const Index> indices);

}  // namespace soficlab
