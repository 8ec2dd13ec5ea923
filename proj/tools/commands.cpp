#include "commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "soficlab/config.hpp"
#include "soficlab/growth.hpp"
#include "soficlab/serialize.hpp"
#include "soficlab/uea.hpp"
#include "soficlab/virasoro.hpp"
#include "soficlab/witt.hpp"

namespace soficlab {

namespace {

/// Raised for bad flag values that CLI11 cannot catch on its own.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path + ": " + ec.message());
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + " is not valid JSON: " + e.what());
  }
}

/// Writes to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty()) {
    out << contents;
  } else {
    write_atomically(path, contents);
  }
}

json certificate_document(const Certificate& cert, const AlmostRep& rep) {
  json doc = to_json(cert);
  doc["representation"] = rep_to_json(rep);
  return doc;
}

std::optional<Rational> parse_bound(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_rational(text);
}

/// The construction a certificate's params describe, when it is one we can redo.
std::optional<AlmostRep> rebuild_from_params(const json& params, const Field& field) {
  const std::string command = params.value("command", std::string());
  if (command == "witt") {
    return witt_rep(params.at("n").get<std::size_t>(), params.at("m").get<std::size_t>(), field);
  }
  if (command == "virasoro") {
    const HighestWeight weight{Scalar(field, parse_rational(params.at("h").get<std::string>())),
                               Scalar(field, parse_rational(params.at("c").get<std::string>()))};
    return virasoro_rep(params.at("n").get<std::size_t>(), params.at("m").get<std::size_t>(),
                        params.at("d").get<std::size_t>(), weight);
  }
  if (command == "growth-rep") {
    PresentationPtr pres = presentation_from_descriptor(field, params.at("presentation"));
    const auto n = params.at("n").get<std::size_t>();
    const auto m = params.at("m").get<std::size_t>();
    const FiltrationTable table =
        lie_filtration(pres, params.at("gens").get<std::vector<Index>>(), m, params.at("radius").get<Index>());
    return left_mult_rep(table, n, m);
  }
  return std::nullopt;
}

struct Options {
  std::string field = "q";
  std::string out_path;
  bool quiet = false;
};

int finish_certificate(const Certificate& cert, const AlmostRep& rep, const std::optional<Rational>& bound,
                       const Options& opts, std::ostream& out, std::ostream& err) {
  emit(opts.out_path, certificate_document(cert, rep).dump(2) + "\n", out);
  if (!opts.quiet && !opts.out_path.empty()) {
    out << cert.algebra << ": carrier_dim " << cert.carrier_dim << ", good_dim " << cert.good_dim
        << ", defect_ratio " << rational_to_string(cert.defect_ratio) << "\n";
  }
  if (bound && cert.defect_ratio > *bound) {
    err << "certification failed: defect_ratio " << rational_to_string(cert.defect_ratio) << " exceeds "
        << rational_to_string(*bound) << "\n";
    return kExitCertificationFailed;
  }
  return kExitOk;
}

void add_field_option(CLI::App* cmd, Options& opts) {
  cmd->add_option("--field", opts.field, "q (default) or fp:P");
}

void add_out_option(CLI::App* cmd, Options& opts, bool required) {
  auto* opt = cmd->add_option("--out", opts.out_path, "Output file (written atomically)");
  if (required) opt->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certification of almost representations of Lie algebras", "soficlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_flag("-q,--quiet", opts.quiet, "Suppress summary lines");

  std::size_t n = 0, m = 0, d = 0, degree = 0, m_max = 0;
  std::string algebra, h_text, c_text = "1", bound_text, rep_kind = "standard", threshold_text;
  std::vector<Index> gens, indices;
  std::vector<std::string> inputs;
  std::string cert_path;
  Index radius = 64;
  bool require_injective = false;

  auto* witt_cmd = app.add_subcommand("witt", "Certify the truncated Witt representation");
  witt_cmd->add_option("--n", n, "Window half-width")->required();
  witt_cmd->add_option("--m", m, "Laurent window half-width")->required();
  add_field_option(witt_cmd, opts);
  add_out_option(witt_cmd, opts, false);

  auto* vir_cmd = app.add_subcommand("virasoro", "Certify the truncated Verma-module representation");
  // --h is the highest weight here, so help is long-form only.
  vir_cmd->set_help_flag("--help", "Print this help message and exit");
  vir_cmd->add_option("--n", n)->required();
  vir_cmd->add_option("--m", m, "Largest part")->required();
  vir_cmd->add_option("--d", d, "Largest monomial length")->required();
  vir_cmd->add_option("--h", h_text, "Highest weight, exact rational")->required();
  vir_cmd->add_option("--c", c_text, "Central value, exact rational (default 1)");
  vir_cmd->add_option("--max-eps", bound_text, "Fail when the certified epsilon exceeds this");
  add_field_option(vir_cmd, opts);
  add_out_option(vir_cmd, opts, false);

  auto* growth_cmd = app.add_subcommand("growth", "Tabulate PBW growth and certified epsilon");
  growth_cmd->add_option("--algebra", algebra)->required();
  growth_cmd->add_option("--gens", gens, "Generators, comma separated")->delimiter(',');
  growth_cmd->add_option("--n", n)->required();
  growth_cmd->add_option("--m-max", m_max)->required();
  growth_cmd->add_option("--radius", radius, "Index radius for infinite presentations");
  growth_cmd->add_option("--threshold", threshold_text, "Report when ratios stall above this");
  add_field_option(growth_cmd, opts);
  add_out_option(growth_cmd, opts, false);

  auto* grep_cmd = app.add_subcommand("growth-rep", "Certify the left-multiplication representation on W_m");
  grep_cmd->add_option("--algebra", algebra)->required();
  grep_cmd->add_option("--gens", gens)->delimiter(',');
  grep_cmd->add_option("--n", n)->required();
  grep_cmd->add_option("--m", m)->required();
  grep_cmd->add_option("--radius", radius);
  grep_cmd->add_option("--max-eps", bound_text);
  add_field_option(grep_cmd, opts);
  add_out_option(grep_cmd, opts, true);

  auto* uea_cmd = app.add_subcommand("uea", "Check injectivity of the tensor-power lift on low PBW degrees");
  uea_cmd->add_option("--algebra", algebra)->required();
  uea_cmd->add_option("--rep", rep_kind)->check(CLI::IsMember({"standard"}));
  uea_cmd->add_option("--degree", degree)->required();
  uea_cmd->add_flag("--require-injective", require_injective, "Exit 1 when the lift is not injective");
  add_field_option(uea_cmd, opts);
  add_out_option(uea_cmd, opts, true);

  auto* combine_cmd = app.add_subcommand("combine", "Weighted amplification of representations over one window");
  combine_cmd->add_option("inputs", inputs, "Certificates or serialized representations")->required();
  combine_cmd->add_option("--max-eps", bound_text);
  add_out_option(combine_cmd, opts, true);

  auto* verify_cmd = app.add_subcommand("verify", "Re-derive a certificate and report differences");
  verify_cmd->add_option("certificate", cert_path)->required();

  auto* sanity_cmd = app.add_subcommand("sanity", "Antisymmetry, Jacobi and centrality on an index set");
  sanity_cmd->add_option("--algebra", algebra)->required();
  sanity_cmd->add_option("--indices", indices)->delimiter(',');
  add_field_option(sanity_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*witt_cmd) {
      if (m < n || n == 0) throw UsageError("witt requires m >= n >= 1");
      const Field field = parse_field(opts.field);
      const AlmostRep rep = witt_rep(n, m, field);
      const Certificate cert = certify(rep, json{{"command", "witt"}, {"n", n}, {"m", m}});
      std::optional<Rational> bound;
      if (m >= 2 * n) bound = witt_defect_bound(n, m);
      return finish_certificate(cert, rep, bound, opts, out, err);
    }

    if (*vir_cmd) {
      const Field field = parse_field(opts.field);
      const Rational h = parse_rational(h_text);
      const Rational c = parse_rational(c_text);
      const AlmostRep rep = virasoro_rep(n, m, d, HighestWeight{Scalar(field, h), Scalar(field, c)});
      const json params{{"command", "virasoro"}, {"n", n},  {"m", m},
                        {"d", d},                {"h", rational_to_string(h)}, {"c", rational_to_string(c)}};
      return finish_certificate(certify(rep, params), rep, parse_bound(bound_text), opts, out, err);
    }

    if (*growth_cmd) {
      if (n == 0 || m_max <= n) throw UsageError("growth requires m-max > n >= 1");
      const Field field = parse_field(opts.field);
      PresentationPtr pres = presentation_by_name(field, algebra);
      if (gens.empty()) gens = default_generators(*pres);
      const FiltrationTable table = lie_filtration(pres, gens, m_max, radius);
      const auto gamma = pbw_dims(table, m_max);
      const auto ratios = growth_ratio_table(table, n, n + 1, m_max);
      std::ostringstream csv;
      csv << "m,gamma,ratio,certified_eps\n";
      for (std::size_t mm = n + 1; mm <= m_max; ++mm) {
        const Rational eps = defect_subspace(left_mult_rep(table, n, mm)).defect_ratio;
        csv << mm << "," << gamma[mm] << "," << rational_to_string(ratios[mm - n - 1]) << ","
            << rational_to_string(eps) << "\n";
      }
      emit(opts.out_path, csv.str(), out);
      if (!threshold_text.empty()) {
        const auto diag = diagnose_growth(ratios, parse_rational(threshold_text));
        out << "tail_non_increasing " << (diag.tail_non_increasing ? "yes" : "no") << "\n"
            << "stalls_above_threshold " << (diag.stalls_above_threshold ? "yes" : "no") << "\n";
      }
      return kExitOk;
    }

    if (*grep_cmd) {
      if (n == 0 || m <= n) throw UsageError("growth-rep requires m > n >= 1");
      const Field field = parse_field(opts.field);
      PresentationPtr pres = presentation_by_name(field, algebra);
      if (gens.empty()) gens = default_generators(*pres);
      const FiltrationTable table = lie_filtration(pres, gens, m, radius);
      const AlmostRep rep = left_mult_rep(table, n, m);
      const json params{{"command", "growth-rep"}, {"presentation", pres->descriptor()},
                        {"gens", gens},            {"n", n},
                        {"m", m},                  {"radius", radius}};
      return finish_certificate(certify(rep, params), rep, parse_bound(bound_text), opts, out, err);
    }

    if (*uea_cmd) {
      const Field field = parse_field(opts.field);
      const InjectivityReport report = injectivity_check(standard_rep(presentation_by_name(field, algebra)), degree);
      const json doc{{"monomial_count", report.monomial_count},
                     {"rank", report.rank},
                     {"injective", report.injective},
                     {"degree", report.degree},
                     {"field", field_to_json(report.field)}};
      emit(opts.out_path, doc.dump(2) + "\n", out);
      if (!opts.quiet) {
        out << "rank " << report.rank << " / " << report.monomial_count
            << (report.injective ? " (injective)" : " (not injective)") << "\n";
      }
      return require_injective && !report.injective ? kExitCertificationFailed : kExitOk;
    }

    if (*combine_cmd) {
      std::vector<AlmostRep> reps;
      for (const auto& path : inputs) {
        const json doc = read_json(path);
        const json& rep_json = doc.contains("representation") ? doc.at("representation") : doc;
        reps.push_back(rep_from_json(rep_json, presentation_from_descriptor));
      }
      const AlmostRep rep = combine_weighted(reps);
      const Certificate cert = certify(rep, json{{"command", "combine"}, {"inputs", inputs.size()}});
      return finish_certificate(cert, rep, parse_bound(bound_text), opts, out, err);
    }

    if (*verify_cmd) {
      const json doc = read_json(cert_path);
      if (!doc.contains("representation")) throw UsageError(cert_path + " has no embedded representation");
      const Certificate claimed = certificate_from_json(doc);
      const AlmostRep rep = rep_from_json(doc.at("representation"), presentation_from_descriptor);
      std::vector<std::string> lines = diff(claimed, certify(rep, claimed.params));
      if (const auto rebuilt = rebuild_from_params(claimed.params, rep.field())) {
        if (rep_to_json(*rebuilt) != rep_to_json(rep)) {
          lines.push_back("representation: differs from the construction named in params");
        }
      }
      if (lines.empty()) {
        if (!opts.quiet) out << "ok: " << cert_path << "\n";
        return kExitOk;
      }
      for (const auto& line : lines) err << line << "\n";
      return kExitCertificationFailed;
    }

    if (*sanity_cmd) {
      const Field field = parse_field(opts.field);
      PresentationPtr pres = presentation_by_name(field, algebra);
      if (indices.empty()) {
        if (!pres->finite_basis()) throw UsageError("--indices is required for infinite presentations");
        indices = *pres->finite_basis();
      }
      const SanityReport report = sanity_check(*pres, indices);
      if (report.passed) {
        if (!opts.quiet) out << "ok: " << pres->name() << "\n";
        return kExitOk;
      }
      err << "sanity check failed: " << report.message << "\n";
      return kExitCertificationFailed;
    }
  } catch (const SizeCapExceeded& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::range_error& e) {
    err << "index radius exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "malformed JSON input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace soficlab
