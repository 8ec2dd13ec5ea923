#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "soficlab/almost_rep.hpp"

namespace soficlab {

/// "Q" or {"Fp": p}.
json field_to_json(const Field& field);
Field field_from_json(const json& j);

/// {rows, cols, field, entries: [[r, c, "num/den" | residue], ...]}.
json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const json& j);

using PresentationFactory = std::function<PresentationPtr(Field, const json&)>;

/// {presentation, field, window, carrier_dim, images: [{index, matrix}, ...]}.
json rep_to_json(const AlmostRep& rep);
AlmostRep rep_from_json(const json& j, const PresentationFactory& factory);

/// Verification record for one almost representation.
struct Certificate {
  std::string algebra;
  json params;
  std::vector<Index> window;
  std::size_t carrier_dim = 0;
  json field;
  Rational defect_ratio;
  std::size_t good_dim = 0;
  std::map<Index, Rational> element_ranks;
  std::string version;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

Certificate certify(const AlmostRep& rep, const DefectReport& report, const json& params);
Certificate certify(const AlmostRep& rep, const json& params);

json to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j);

/// One human-readable line per differing field; empty when equal.
std::vector<std::string> diff(const Certificate& expected, const Certificate& actual);

}  // namespace soficlab
