// Command-line front end: distance, causal, verify, sweep.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 quadrature did
// not converge. Data goes to `out`, diagnostics to `err`.
//
// Smearing family documents (load_family): a JSON list of smearings, each a
// list of terms {"v": [4 reals], "center": [4 reals], "width": real,
// "weight": real (default 1)}. A flat list of terms is one smearing.
// Output documents are described in docs/output_schema.md.
#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ncst/core.hpp"
#include "ncst/geometry.hpp"
#include "ncst/integrate.hpp"
#include "ncst/state.hpp"
#include "ncst/testfn.hpp"
#include "ncst/verify.hpp"

namespace ncst::cli {

using ojson = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv, Text };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw PreconditionError("unknown output format: " + s);
}

inline std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "json";
}

inline Vec4 vec4_from(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 4) throw PreconditionError(what + " needs exactly 4 components");
  Vec4 out{v[0], v[1], v[2], v[3]};
  if (!is_finite(out)) throw PreconditionError(what + " has non-finite entries");
  return out;
}

inline ojson vec4_json(const Vec4& v) { return ojson::array({v[0], v[1], v[2], v[3]}); }

/// Effective settings of a run: defaults, then config file, then flags.
struct RunConfig {
  double planck_length = 1.0;
  FourVector u{{1.0, 0.0, 0.0, 0.0}};
  double state_alpha = 1.0;
  SpacetimePoint psi_center{};
  double psi_width = 1.0;
  QuadratureConfig quad{};
  OutputFormat format = OutputFormat::Json;

  PhysicalConstants constants() const { return PhysicalConstants(planck_length); }

  DMStateParams state() const {
    DMStateParams s;
    s.state_alpha = state_alpha;
    s.psi = GaussianBump(psi_center, psi_width);
    s.constants = constants();
    s.u = u;
    s.validate();
    return s;
  }

  /// Applies a config document; absent keys keep their current values.
  void merge(const nlohmann::json& j) {
    if (!j.is_object()) throw PreconditionError("config document must be a JSON object");
    auto vec = [](const nlohmann::json& v, const char* what) {
      return vec4_from(v.get<std::vector<double>>(), what);
    };
    if (j.contains("constants")) {
      const auto& c = j["constants"];
      if (c.contains("planck_length")) planck_length = c["planck_length"].get<double>();
      if (c.contains("kappa_sq")) planck_length = PhysicalConstants::from_kappa_sq(c["kappa_sq"]).planck_length();
      if (c.contains("u")) u = FourVector{vec(c["u"], "constants.u")};
    }
    if (j.contains("state")) {
      const auto& s = j["state"];
      if (s.contains("alpha")) state_alpha = s["alpha"].get<double>();
      if (s.contains("psi")) {
        const auto& p = s["psi"];
        if (p.contains("center")) psi_center = SpacetimePoint{vec(p["center"], "state.psi.center")};
        if (p.contains("width")) psi_width = p["width"].get<double>();
      }
    }
    if (j.contains("quadrature")) {
      const auto& q = j["quadrature"];
      if (q.contains("rel_tol")) quad.rel_tol = q["rel_tol"].get<double>();
      if (q.contains("abs_tol")) quad.abs_tol = q["abs_tol"].get<double>();
      if (q.contains("max_evals")) quad.max_evals = q["max_evals"].get<std::uint64_t>();
      if (q.contains("mc_samples")) quad.mc_samples = q["mc_samples"].get<std::uint64_t>();
      if (q.contains("seed")) quad.seed = q["seed"].get<std::uint64_t>();
      if (q.contains("workers")) quad.workers = q["workers"].get<unsigned>();
    }
    if (j.contains("output") && j["output"].contains("format"))
      format = parse_format(j["output"]["format"].get<std::string>());
    // flat aliases
    if (j.contains("state_alpha")) state_alpha = j["state_alpha"].get<double>();
    if (j.contains("psi_center")) psi_center = SpacetimePoint{vec(j["psi_center"], "psi_center")};
    if (j.contains("psi_width")) psi_width = j["psi_width"].get<double>();
    if (j.contains("planck_length")) planck_length = j["planck_length"].get<double>();
    if (j.contains("u")) u = FourVector{vec(j["u"], "u")};
  }

  void validate() const {
    (void)constants();
    (void)state();
    quad.validate();
  }

  ojson to_json() const {
    const PhysicalConstants k = constants();
    return ojson{
        {"constants", {{"planck_length", k.planck_length()}, {"kappa_sq", k.kappa_sq()}, {"u", vec4_json(u.coords)}}},
        {"state", {{"alpha", state_alpha}, {"psi", {{"center", vec4_json(psi_center.coords)}, {"width", psi_width}}}}},
        {"quadrature",
         {{"rel_tol", quad.rel_tol},
          {"abs_tol", quad.abs_tol},
          {"max_evals", quad.max_evals},
          {"mc_samples", quad.mc_samples},
          {"seed", quad.seed},
          {"workers", worker_count(quad.workers)}}},
        {"output", {{"format", to_string(format)}}}};
  }
};

/// One output row; field order is preserved in every format.
using Row = ojson;

/// Renders rows. JSON wraps them with the command name and effective config;
/// CSV and text print the same cell values.
inline void render(std::ostream& out, OutputFormat fmt, const std::string& command, const RunConfig& cfg,
                   const std::vector<Row>& rows, const ojson& extra = ojson::object(), bool single = false) {
  if (fmt == OutputFormat::Json) {
    ojson doc{{"command", command}};
    for (const auto& [k, v] : extra.items()) doc[k] = v;
    doc["config"] = cfg.to_json();
    if (single && rows.size() == 1)
      doc["result"] = rows.front();
    else
      doc["rows"] = rows;
    out << doc.dump(2) << "\n";
    return;
  }
  auto cell = [](const ojson& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (fmt == OutputFormat::Csv) {
    if (rows.empty()) return;
    bool first = true;
    for (const auto& [k, v] : rows.front().items()) {
      out << (first ? "" : ",") << k;
      first = false;
    }
    out << "\n";
    for (const auto& r : rows) {
      first = true;
      for (const auto& [k, v] : r.items()) {
        std::string s = cell(v);
        if (s.find(',') != std::string::npos) s = "\"" + s + "\"";
        out << (first ? "" : ",") << s;
        first = false;
      }
      out << "\n";
    }
    return;
  }
  for (const auto& [k, v] : extra.items()) out << k << ": " << cell(v) << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows.size() > 1) out << "[" << i << "]\n";
    for (const auto& [k, v] : rows[i].items()) out << "  " << k << ": " << cell(v) << "\n";
  }
}

inline std::string classify(double value, double error) {
  const double band = std::max(3.0 * error, 1e-12);
  if (std::abs(value) <= band) return "spacelike";
  if (std::abs(value - 1.0) <= band) return "future";
  if (std::abs(value + 1.0) <= band) return "past";
  return "fuzzy";
}

struct Range {
  double start = 0.0, stop = 0.0;
  std::size_t count = 0;

  std::vector<double> values(bool geometric) const {
    std::vector<double> v;
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      v.push_back(geometric ? start * std::pow(stop / start, t) : start + t * (stop - start));
    }
    return v;
  }
};

inline Range parse_range(const std::string& s) {
  Range r;
  char c1 = 0, c2 = 0;
  long long n = 0;
  std::istringstream in(s);
  if (!(in >> r.start >> c1 >> r.stop >> c2 >> n) || c1 != ':' || c2 != ':' || !in.eof() || n <= 0)
    throw PreconditionError("range must be start:stop:count with count > 0, got '" + s + "'");
  r.count = static_cast<std::size_t>(n);
  return r;
}

/// Raw flag values; unset optionals leave the config untouched.
struct Flags {
  std::string config_path;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed, mc_samples, max_evals;
  std::optional<double> rel_tol, kappa_sq, planck_length, state_alpha, psi_width;
  std::optional<unsigned> workers;
  std::vector<double> u, psi_center;

  std::vector<double> p{1.0, 0.0, 0.0, 0.0}, q{0.0, 0.0, 0.0, 0.0}, direction{1.0, 0.0, 0.0, 0.0};
  double width = 1e2;
  std::optional<double> q_width;
  bool diagnostics = false;
  bool via_weyl = false;
  std::string pairing = "standard";
  std::string suite;
  std::string axis;
  std::string range;
  bool geometric = false;
};

inline RunConfig effective_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw PreconditionError("cannot open config file: " + f.config_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("config file is not valid JSON: ") + e.what());
    }
    cfg.merge(j);
  }
  if (f.format) cfg.format = parse_format(*f.format);
  if (f.seed) cfg.quad.seed = *f.seed;
  if (f.mc_samples) cfg.quad.mc_samples = *f.mc_samples;
  if (f.max_evals) cfg.quad.max_evals = *f.max_evals;
  if (f.rel_tol) cfg.quad.rel_tol = *f.rel_tol;
  if (f.workers) cfg.quad.workers = *f.workers;
  if (f.planck_length) cfg.planck_length = *f.planck_length;
  if (f.kappa_sq) cfg.planck_length = PhysicalConstants::from_kappa_sq(*f.kappa_sq).planck_length();
  if (f.state_alpha) cfg.state_alpha = *f.state_alpha;
  if (f.psi_width) cfg.psi_width = *f.psi_width;
  if (!f.psi_center.empty()) cfg.psi_center = SpacetimePoint{vec4_from(f.psi_center, "--psi-center")};
  if (!f.u.empty()) cfg.u = FourVector{vec4_from(f.u, "--u")};
  cfg.validate();
  return cfg;
}

inline Row distance_row(const DistanceBreakdown& d) {
  return Row{{"classical", d.classical}, {"quantum", d.quantum}, {"total", d.total},
             {"error", d.error},         {"converged", d.converged}};
}

inline int cmd_distance(const Flags& f, const RunConfig& cfg, std::ostream& out) {
  const GaussianBump p(SpacetimePoint{vec4_from(f.p, "--p")}, f.width);
  const GaussianBump q(SpacetimePoint{vec4_from(f.q, "--q")}, f.q_width.value_or(f.width));
  Integrator integ(cfg.quad);
  const bool finite_alpha = f.state_alpha.has_value();
  const DistanceBreakdown d =
      finite_alpha ? distance_alpha(p, q, cfg.state(), integ) : distance(p, q, cfg.constants(), integ);
  Row row{{"p", vec4_json(p.center.coords)}, {"q", vec4_json(q.center.coords)}, {"width_p", p.width},
          {"width_q", q.width}, {"functional", finite_alpha ? "D_alpha" : "D"}};
  for (const Row dr = distance_row(d); const auto& [k, v] : dr.items()) row[k] = v;
  bool converged = d.converged;
  if (f.diagnostics) {
    const DistanceBreakdown w = omega_second_moment(p, q, cfg.state(), integ);
    row["omega_second_moment"] = w.total;
    row["omega_second_moment_error"] = w.error;
    converged = converged && w.converged;
  }
  render(out, cfg.format, "distance", cfg, {row}, ojson::object(), true);
  return converged ? 0 : 3;
}

inline int cmd_causal(const Flags& f, const RunConfig& cfg, std::ostream& out) {
  const GaussianBump p(SpacetimePoint{vec4_from(f.p, "--p")}, f.width);
  const GaussianBump q(SpacetimePoint{vec4_from(f.q, "--q")}, f.q_width.value_or(f.width));
  Integrator integ(cfg.quad);
  double value = 0.0, error = 0.0;
  bool converged = true;
  Row row{{"p", vec4_json(p.center.coords)}, {"q", vec4_json(q.center.coords)}, {"width_p", p.width},
          {"width_q", q.width}};
  if (f.via_weyl) {
    const Pairing pairing = f.pairing == "krein" ? Pairing::Krein : Pairing::Standard;
    if (f.pairing != "krein" && f.pairing != "standard")
      throw PreconditionError("--pairing must be standard or krein");
    const WeylCausal w = causal_via_weyl(p, q, cfg.state(), integ, pairing);
    value = w.value;
    error = w.error;
    converged = w.converged;
    row["route"] = "weyl-" + f.pairing;
    row["branch_cut_suspect"] = w.branch_cut_suspect;
  } else {
    const Estimate c = causal(p, q, integ);
    value = c.value;
    error = c.error;
    converged = c.converged;
    row["route"] = "reduced";
  }
  row["value"] = value;
  row["error"] = error;
  row["classification"] = classify(value, error);
  row["converged"] = converged;
  render(out, cfg.format, "causal", cfg, {row}, ojson::object(), true);
  return converged ? 0 : 3;
}

inline int cmd_verify(const Flags& f, const RunConfig& cfg, std::ostream& out) {
  verify::Options opt;
  opt.quad = cfg.quad;
  opt.seed = cfg.quad.seed;
  std::vector<std::string> suites;
  if (f.suite == "all")
    suites = verify::suite_names();
  else
    suites = {f.suite};
  bool all_passed = true;
  for (const auto& name : suites) {
    const verify::SuiteReport rep = verify::run_suite(name, opt);
    std::vector<Row> rows;
    for (const auto& c : rep.checks)
      rows.push_back(Row{{"name", c.name},
                         {"expected", c.expected},
                         {"computed", c.computed},
                         {"tolerance", c.tolerance},
                         {"verdict", c.passed ? "pass" : "fail"}});
    render(out, cfg.format, "verify", cfg, rows,
           ojson{{"suite", rep.suite}, {"passed", rep.passed()}, {"seconds", rep.seconds}});
    all_passed = all_passed && rep.passed();
  }
  return all_passed ? 0 : 1;
}

inline int cmd_sweep(const Flags& f, const RunConfig& cfg, std::ostream& out) {
  const Range range = parse_range(f.range);
  if (f.geometric && (range.start <= 0.0 || range.stop <= 0.0))
    throw PreconditionError("--log needs a positive range");
  const std::vector<double> xs = range.values(f.geometric);
  const SpacetimePoint p0{vec4_from(f.p, "--p")}, q0{vec4_from(f.q, "--q")};
  const Vec4 dir = vec4_from(f.direction, "--direction");
  Integrator integ(cfg.quad);
  std::vector<Row> rows(xs.size());
  std::vector<char> ok(xs.size(), 1);

  if (f.axis == "separation") {
    parallel_for(xs.size(), worker_count(cfg.quad.workers), [&](std::size_t i) {
      SpacetimePoint p = q0;
      for (std::size_t m = 0; m < 4; ++m) p[m] += xs[i] * dir[m];
      const GaussianBump bp(p, f.width), bq(q0, f.q_width.value_or(f.width));
      const DistanceBreakdown d = distance(bp, bq, cfg.constants(), integ);
      const Estimate c = causal(bp, bq, integ);
      Row r{{"x", xs[i]}, {"interval", minkowski_interval(p, q0)}};
      for (const Row dr = distance_row(d); const auto& [k, v] : dr.items()) r[k] = v;
      r["causal"] = c.value;
      r["causal_error"] = c.error;
      rows[i] = std::move(r);
      ok[i] = d.converged && c.converged;
    });
  } else if (f.axis == "width") {
    std::vector<Estimate> cs(xs.size());
    parallel_for(xs.size(), worker_count(cfg.quad.workers), [&](std::size_t i) {
      if (!(xs[i] > 0.0)) throw PreconditionError("widths must be positive");
      const GaussianBump bp(p0, xs[i]), bq(q0, xs[i]);
      const DistanceBreakdown d = distance(bp, bq, cfg.constants(), integ);
      cs[i] = causal(bp, bq, integ);
      Row r{{"width", xs[i]}};
      for (const Row dr = distance_row(d); const auto& [k, v] : dr.items()) r[k] = v;
      r["causal"] = cs[i].value;
      r["causal_error"] = cs[i].error;
      rows[i] = std::move(r);
      ok[i] = d.converged && cs[i].converged;
    });
    std::vector<double> inv, vals;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      inv.push_back(1.0 / xs[i]);
      vals.push_back(cs[i].value);
    }
    const double limit = extrapolate_to_zero(inv, vals);
    for (auto& r : rows) r["causal_limit"] = limit;
  } else if (f.axis == "state-alpha") {
    const GaussianBump bp(p0, f.width), bq(q0, f.q_width.value_or(f.width));
    const DistanceBreakdown lim = distance(bp, bq, cfg.constants(), integ);
    parallel_for(xs.size(), worker_count(cfg.quad.workers), [&](std::size_t i) {
      RunConfig c = cfg;
      c.state_alpha = xs[i];
      const DistanceBreakdown d = distance_alpha(bp, bq, c.state(), integ);
      Row r{{"state_alpha", xs[i]}};
      for (const Row dr = distance_row(d); const auto& [k, v] : dr.items()) r[k] = v;
      r["limit_total"] = lim.total;
      r["gap"] = d.total - lim.total;
      rows[i] = std::move(r);
      ok[i] = d.converged && lim.converged;
    });
  } else {
    throw PreconditionError("sweep axis must be separation, width or state-alpha");
  }
  render(out, cfg.format, "sweep", cfg, rows, ojson{{"axis", f.axis}});
  for (char c : ok)
    if (!c) return 3;
  return 0;
}

/// Parses and runs one command line. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ncst: distances and causal relations on noncommutative Minkowski space"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&f](CLI::App* sub) {
    sub->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--format", f.format, "json | csv | text");
    sub->add_option("--seed", f.seed, "Monte Carlo seed");
    sub->add_option("--mc-samples", f.mc_samples);
    sub->add_option("--max-evals", f.max_evals);
    sub->add_option("--rel-tol", f.rel_tol);
    sub->add_option("--workers", f.workers, "worker threads (default: NCST_WORKERS or all cores)");
    auto* ks = sub->add_option("--kappa-sq", f.kappa_sq, "kappa^2 (sets planck length)");
    sub->add_option("--planck-length", f.planck_length)->excludes(ks);
    sub->add_option("--state-alpha", f.state_alpha);
    sub->add_option("--psi-center", f.psi_center)->delimiter(',');
    sub->add_option("--psi-width", f.psi_width);
    sub->add_option("--u", f.u, "Krein vector")->delimiter(',');
  };
  auto points = [&f](CLI::App* sub) {
    sub->add_option("--p", f.p, "center of chi_p, t,x,y,z")->delimiter(',');
    sub->add_option("--q", f.q, "center of chi_q, t,x,y,z")->delimiter(',');
    sub->add_option("--width", f.width, "bump width a (both bumps)");
    sub->add_option("--q-width", f.q_width, "width of chi_q if different");
  };

  auto* dist = app.add_subcommand("distance", "distance functional between two localized points");
  common(dist);
  points(dist);
  dist->add_flag("--diagnostics", f.diagnostics, "also report the omega-based second moment");

  auto* caus = app.add_subcommand("causal", "causal functional between two localized points");
  common(caus);
  points(caus);
  caus->add_flag("--via-weyl", f.via_weyl, "evaluate through Weyl triple products and tau");
  caus->add_option("--pairing", f.pairing, "standard | krein (with --via-weyl)");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  common(ver);
  std::vector<std::string> suite_choices = verify::suite_names();
  suite_choices.push_back("all");
  ver->add_option("suite", f.suite)->required()->check(CLI::IsMember(suite_choices));

  auto* sw = app.add_subcommand("sweep", "tabulate distance and causal values along an axis");
  common(sw);
  points(sw);
  sw->add_option("axis", f.axis)->required()->check(CLI::IsMember({"separation", "width", "state-alpha"}));
  sw->add_option("--range", f.range, "start:stop:count")->required();
  sw->add_option("--direction", f.direction, "displacement direction for separation sweeps")->delimiter(',');
  sw->add_flag("--log", f.geometric, "geometric spacing");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const RunConfig cfg = effective_config(f);
    if (dist->parsed()) return cmd_distance(f, cfg, out);
    if (caus->parsed()) return cmd_causal(f, cfg, out);
    if (ver->parsed()) return cmd_verify(f, cfg, out);
    if (sw->parsed()) return cmd_sweep(f, cfg, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad config value: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ncst::cli
