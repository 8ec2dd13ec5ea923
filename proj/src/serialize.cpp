#include "soficlab/serialize.hpp"

#include <stdexcept>

#include "soficlab/config.hpp"

namespace soficlab {

json field_to_json(const Field& field) {
  if (field.is_rational()) return "Q";
  return json{{"Fp", field.characteristic()}};
}

Field field_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "Q") return Field::rationals();
  if (j.is_object() && j.contains("Fp")) return Field::prime(j.at("Fp").get<std::uint64_t>());
  throw std::invalid_argument("bad field descriptor: " + j.dump());
}

json matrix_to_json(const ExactMatrix& m) {
  json entries = json::array();
  for (const auto& e : m.entries()) {
    if (m.field().is_rational()) {
      entries.push_back({e.row, e.col, e.value.to_string()});
    } else {
      entries.push_back({e.row, e.col, e.value.residue()});
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"field", field_to_json(m.field())}, {"entries", entries}};
}

ExactMatrix matrix_from_json(const json& j) {
  const Field field = field_from_json(j.at("field"));
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  std::vector<Entry> entries;
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("matrix entry must be [r, c, value]");
    const json& v = e[2];
    Scalar value(field);
    if (v.is_string()) {
      value = Scalar(field, parse_rational(v.get<std::string>()));
    } else if (v.is_number_integer()) {
      value = Scalar(field, v.get<long long>());
    } else {
      throw std::invalid_argument("matrix value must be \"num/den\" or an integer residue: " + v.dump());
    }
    entries.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), value});
  }
  return ExactMatrix::from_entries(field, rows, cols, std::move(entries));
}

json rep_to_json(const AlmostRep& rep) {
  json images = json::array();
  for (std::size_t k = 0; k < rep.window().size(); ++k) {
    images.push_back({{"index", rep.window().basis()[k]}, {"matrix", matrix_to_json(rep.images()[k])}});
  }
  return json{{"presentation", rep.window().presentation()->descriptor()},
              {"field", field_to_json(rep.field())},
              {"window", rep.window().basis()},
              {"carrier_dim", rep.carrier_dim()},
              {"images", images}};
}

AlmostRep rep_from_json(const json& j, const PresentationFactory& factory) {
  const Field field = field_from_json(j.at("field"));
  PresentationPtr pres = factory(field, j.at("presentation"));
  Window window = make_window(pres, j.at("window").get<std::vector<Index>>());
  const auto n = j.at("carrier_dim").get<std::size_t>();
  std::vector<ExactMatrix> images(window.size(), ExactMatrix(field, n, n));
  std::vector<bool> filled(window.size(), false);
  for (const auto& item : j.at("images")) {
    const auto pos = window.position(item.at("index").get<Index>());
    if (!pos) throw std::invalid_argument("image for an index outside the window: " + item.at("index").dump());
    if (filled[*pos]) throw std::invalid_argument("duplicate image for index " + item.at("index").dump());
    images[*pos] = matrix_from_json(item.at("matrix"));
    filled[*pos] = true;
  }
  for (std::size_t k = 0; k < filled.size(); ++k) {
    if (!filled[k]) throw std::invalid_argument("missing image for window index " + std::to_string(window.basis()[k]));
  }
  return AlmostRep(std::move(window), n, std::move(images));
}

Certificate certify(const AlmostRep& rep, const DefectReport& report, const json& params) {
  Certificate cert;
  cert.algebra = rep.window().presentation()->name();
  cert.params = params;
  cert.window = rep.window().basis();
  cert.carrier_dim = rep.carrier_dim();
  cert.field = field_to_json(rep.field());
  cert.defect_ratio = report.defect_ratio;
  cert.good_dim = report.good_subspace.dim();
  for (const auto& [i, r] : report.element_ranks) cert.element_ranks[i] = r.normalized;
  cert.version = kVersion;
  return cert;
}

Certificate certify(const AlmostRep& rep, const json& params) { return certify(rep, defect_subspace(rep), params); }

json to_json(const Certificate& cert) {
  json ranks = json::object();
  for (const auto& [i, rho] : cert.element_ranks) ranks[std::to_string(i)] = rational_to_string(rho);
  return json{{"algebra", cert.algebra},
              {"params", cert.params},
              {"window", cert.window},
              {"carrier_dim", cert.carrier_dim},
              {"field", cert.field},
              {"defect_ratio", rational_to_string(cert.defect_ratio)},
              {"good_dim", cert.good_dim},
              {"element_ranks", ranks},
              {"version", cert.version}};
}

Certificate certificate_from_json(const json& j) {
  Certificate cert;
  cert.algebra = j.at("algebra").get<std::string>();
  cert.params = j.at("params");
  cert.window = j.at("window").get<std::vector<Index>>();
  cert.carrier_dim = j.at("carrier_dim").get<std::size_t>();
  cert.field = j.at("field");
  cert.defect_ratio = parse_rational(j.at("defect_ratio").get<std::string>());
  cert.good_dim = j.at("good_dim").get<std::size_t>();
  for (const auto& [key, value] : j.at("element_ranks").items()) {
    cert.element_ranks[std::stoll(key)] = parse_rational(value.get<std::string>());
  }
  cert.version = j.at("version").get<std::string>();
  return cert;
}

std::vector<std::string> diff(const Certificate& expected, const Certificate& actual) {
  const json a = to_json(expected);
  const json b = to_json(actual);
  std::vector<std::string> lines;
  for (const auto& [key, value] : a.items()) {
    if (!b.contains(key)) {
      lines.push_back(key + ": missing");
    } else if (b.at(key) != value) {
      lines.push_back(key + ": expected " + value.dump() + ", found " + b.at(key).dump());
    }
  }
  return lines;
}

}  // namespace soficlab
