#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "soficlab/config.hpp"
#include "soficlab/growth.hpp"
#include "soficlab/serialize.hpp"
#include "soficlab/uea.hpp"
#include "soficlab/virasoro.hpp"
#include "soficlab/witt.hpp"

namespace py = pybind11;
using namespace soficlab;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(rational_to_string(r));
}

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

/// Accepts an int, a Fraction or an exact string such as "3/2".
Rational exact(const py::handle& value) {
  if (py::isinstance<py::str>(value)) return parse_rational(value.cast<std::string>());
  if (py::isinstance<py::bool_>(value) || py::isinstance<py::float_>(value)) {
    throw py::type_error("expected an int, Fraction or \"num/den\" string, not " +
                         py::str(value.get_type()).cast<std::string>());
  }
  if (py::isinstance<py::int_>(value)) return parse_rational(py::str(value).cast<std::string>());
  if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator")) {
    return parse_rational(py::str(value.attr("numerator")).cast<std::string>() + "/" +
                          py::str(value.attr("denominator")).cast<std::string>());
  }
  throw py::type_error("expected an int, Fraction or \"num/den\" string");
}

py::dict certificate(const AlmostRep& rep, const json& params) {
  json doc = to_json(certify(rep, params));
  py::dict out = to_python(doc);
  out["defect_ratio"] = fraction(parse_rational(doc.at("defect_ratio").get<std::string>()));
  py::dict ranks;
  for (const auto& [key, value] : doc.at("element_ranks").items()) {
    ranks[py::int_(std::stoll(key))] = fraction(parse_rational(value.get<std::string>()));
  }
  out["element_ranks"] = ranks;
  return out;
}

std::vector<Index> generators_or_default(const PresentationPtr& pres, const std::optional<std::vector<Index>>& gens) {
  return gens && !gens->empty() ? *gens : default_generators(*pres);
}

}  // namespace

PYBIND11_MODULE(soficlab, m) {
  m.doc() = "Exact certification of almost representations of Lie algebras";
  m.attr("__version__") = kVersion;

  py::register_exception<SizeCapExceeded>(m, "SizeCapExceeded", PyExc_RuntimeError);

  m.def(
      "witt_certificate",
      [](std::size_t n, std::size_t m, const std::string& field) {
        return certificate(witt_rep(n, m, parse_field(field)), json{{"command", "witt"}, {"n", n}, {"m", m}});
      },
      py::arg("n"), py::arg("m"), py::arg("field") = "q",
      "Certificate of the truncated Witt representation; ratios are Fractions.");

  m.def(
      "witt_defect_bound", [](std::size_t n, std::size_t m) { return fraction(witt_defect_bound(n, m)); },
      py::arg("n"), py::arg("m"));

  m.def(
      "virasoro_certificate",
      [](std::size_t n, std::size_t m, std::size_t d, const py::object& h, const py::object& c,
         const std::string& field) {
        const Field f = parse_field(field);
        const Rational hq = exact(h), cq = exact(c);
        const json params{{"command", "virasoro"}, {"n", n},  {"m", m},
                          {"d", d},                {"h", rational_to_string(hq)}, {"c", rational_to_string(cq)}};
        return certificate(virasoro_rep(n, m, d, HighestWeight{Scalar(f, hq), Scalar(f, cq)}), params);
      },
      py::arg("n"), py::arg("m"), py::arg("d"), py::arg("h"), py::arg("c") = 1, py::arg("field") = "q");

  m.def(
      "verma_dim", [](std::size_t m, std::size_t d) { return verma_dim(m, d); }, py::arg("m"), py::arg("d"));

  m.def(
      "pbw_dims",
      [](const std::string& algebra, std::size_t n_max, std::optional<std::vector<Index>> gens, Index radius) {
        PresentationPtr pres = presentation_by_name(Field::rationals(), algebra);
        const auto table = lie_filtration(pres, generators_or_default(pres, gens), n_max, radius);
        return pbw_dims(table, n_max);
      },
      py::arg("algebra"), py::arg("n_max"), py::arg("gens") = py::none(), py::arg("radius") = 64);

  m.def(
      "growth_table",
      [](const std::string& algebra, std::size_t n, std::size_t m_max, std::optional<std::vector<Index>> gens,
         Index radius) {
        PresentationPtr pres = presentation_by_name(Field::rationals(), algebra);
        const auto table = lie_filtration(pres, generators_or_default(pres, gens), m_max, radius);
        const auto gamma = pbw_dims(table, m_max);
        const auto ratios = growth_ratio_table(table, n, n + 1, m_max);
        py::list rows;
        for (std::size_t mm = n + 1; mm <= m_max; ++mm) {
          py::dict row;
          row["m"] = mm;
          row["gamma"] = gamma[mm];
          row["ratio"] = fraction(ratios[mm - n - 1]);
          row["certified_eps"] = fraction(defect_subspace(left_mult_rep(table, n, mm)).defect_ratio);
          rows.append(row);
        }
        return rows;
      },
      py::arg("algebra"), py::arg("n"), py::arg("m_max"), py::arg("gens") = py::none(), py::arg("radius") = 64,
      "Rows with m, gamma, ratio and certified_eps for m = n+1..m_max.");

  m.def(
      "uea_report",
      [](const std::string& algebra, std::size_t degree, const std::string& field) {
        const auto r = injectivity_check(standard_rep(presentation_by_name(parse_field(field), algebra)), degree);
        return to_python(json{{"monomial_count", r.monomial_count},
                              {"rank", r.rank},
                              {"injective", r.injective},
                              {"degree", r.degree},
                              {"field", field_to_json(r.field)}});
      },
      py::arg("algebra"), py::arg("degree"), py::arg("field") = "q");
}
