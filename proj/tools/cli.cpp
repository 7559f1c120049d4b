#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lipext/core/error.hpp"
#include "lipext/core/format.hpp"
#include "lipext/experiments/expander.hpp"
#include "lipext/experiments/holder.hpp"
#include "lipext/experiments/record.hpp"
#include "lipext/ext/extension.hpp"
#include "lipext/graphs/expansion.hpp"
#include "lipext/graphs/menger.hpp"
#include "lipext/graphs/random_regular.hpp"
#include "lipext/io/json_io.hpp"
#include "lipext/metric/constructions.hpp"
#include "lipext/metric/validate.hpp"
#include "lipext/wasserstein/w1.hpp"
#include "lipext/zext/zero_extension.hpp"

namespace lipext::cli {
namespace {

using io::Json;

constexpr int kDefaultTwistCap = 8;

struct Common {
  std::string arithmetic = "auto";
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  std::string manifest;
};

struct Outcome {
  std::string summary;
  std::string artifact;
  std::vector<std::string> statuses{"ok"};
  int exit_code = kExitOk;
  bool artifact_is_report = false;  // experiments print the report by default
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kCapacity: return kExitCapacity;
    case ErrorKind::kSampling:
    case ErrorKind::kNumerical:
    case ErrorKind::kInvariant: return kExitInternal;
    default: return kExitDomain;
  }
}

int exit_code_for_status(const std::string& status) {
  if (status.rfind("error:", 0) != 0) return kExitOk;
  const std::string kind = status.substr(6, status.find(':', 6) - 6);
  for (auto k : {ErrorKind::kDomain, ErrorKind::kShape, ErrorKind::kConnectivity,
                 ErrorKind::kRegularity, ErrorKind::kParity, ErrorKind::kSampling,
                 ErrorKind::kCapacity, ErrorKind::kInfeasible, ErrorKind::kNumerical,
                 ErrorKind::kInvariant}) {
    if (kind == to_string(k)) return exit_code_for(k);
  }
  return kExitInternal;
}

opt::Backend backend_of(const Common& c) {
  if (c.arithmetic == "exact") return opt::Backend::kExact;
  if (c.arithmetic == "float") return opt::Backend::kFloat;
  return opt::Backend::kAuto;
}

bool exact_of(const Common& c, bool auto_exact) {
  return c.arithmetic == "exact" || (c.arithmetic == "auto" && auto_exact);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string show(double v) { return format_double(v); }
std::string show(const Rational& v) { return format_double(to_double(v)); }

template <class T>
T scalar_arg(const std::string& text) {
  return io::scalar_from_json<T>(Json(text));
}

// ---- metric ---------------------------------------------------------------

template <class T>
Outcome metric_validate(const Json& doc, bool semi) {
  const auto m = io::metric_from_json<T>(doc);
  metric::ValidateOptions opts;
  opts.mode = semi ? metric::MetricMode::kSemiMetric : metric::MetricMode::kMetric;
  opts.max_listed = 100;
  const auto rep = metric::validate_metric(m, opts);

  Outcome o;
  std::ostringstream s;
  Json violations = Json::array();
  for (const auto& v : rep.violations) {
    const auto& a = m.label(v.i);
    const auto& b = m.label(v.j);
    Json jv{{"kind", metric::to_string(v.kind)}, {"points", Json::array({a, b})}};
    switch (v.kind) {
      case metric::ViolationKind::kTriangle:
        jv["points"] = Json::array({a, m.label(v.via), b});
        s << "triangle (" << a << ", " << m.label(v.via) << ", " << b << "): d(" << a << "," << b
          << ") > d(" << a << "," << m.label(v.via) << ") + d(" << m.label(v.via) << "," << b
          << ") by " << show(v.excess) << "\n";
        break;
      case metric::ViolationKind::kDiagonal:
        s << "diagonal (" << a << "): d(" << a << "," << a << ") != 0\n";
        break;
      case metric::ViolationKind::kSymmetry:
        s << "symmetry (" << a << ", " << b << "): d(" << a << "," << b << ") != d(" << b << ","
          << a << ")\n";
        break;
      case metric::ViolationKind::kPositivity:
        s << "positivity (" << a << ", " << b << "): d(" << a << "," << b << ") "
          << (semi ? "< 0" : "<= 0") << "\n";
        break;
    }
    jv["excess"] = v.excess;
    violations.push_back(std::move(jv));
  }
  if (rep.ok) {
    s << "valid " << (semi ? "semi-metric" : "metric") << " on " << m.size() << " points\n";
  } else {
    s << "invalid: " << rep.violation_count << " violation(s)\n";
    o.exit_code = kExitDomain;
    o.statuses = {"error:domain: " + std::to_string(rep.violation_count) + " violation(s)"};
  }
  o.summary = s.str();
  Json j{{"ok", rep.ok},
         {"points", m.size()},
         {"mode", semi ? "semi-metric" : "metric"},
         {"arithmetic", is_exact_v<T> ? "exact" : "float"},
         {"violation_count", rep.violation_count},
         {"violations", std::move(violations)}};
  o.artifact = dump(j);
  return o;
}

template <class T>
Outcome metric_magnify(const Json& doc, const std::vector<std::string>& subset,
                       const std::string& r_text) {
  const auto m = io::metric_from_json<T>(doc);
  metric::Subset s;
  for (const auto& l : subset) s.indices.push_back(m.index_of(l));
  s.check(m.size());
  const T r = scalar_arg<T>(r_text);
  const auto mag = metric::magnify(m, s, r);
  Outcome o;
  o.summary = "magnified " + std::to_string(s.size()) + " of " + std::to_string(m.size()) +
              " points by r = " + show(r) + "; diam = " + show(metric::diameter(mag)) + "\n";
  o.artifact = dump(io::metric_to_json(mag));
  return o;
}

// ---- graphs ---------------------------------------------------------------

Outcome graphs_expansion(const graphs::Graph& g, const std::string& method) {
  graphs::ExpansionReport rep;
  if (method == "exact") {
    rep = graphs::edge_expansion_exact(g);
  } else if (method == "spectral") {
    rep = graphs::edge_expansion_spectral_bound(g);
  } else {
    rep = graphs::edge_expansion(g);
  }
  Json j{{"phi", rep.phi}, {"method", graphs::to_string(rep.method)}};
  if (rep.phi_exact) j["phi_exact"] = io::scalar_to_json(*rep.phi_exact);
  if (rep.method == graphs::ExpansionMethod::kExact) j["witness"] = rep.witness.indices;
  Outcome o;
  o.summary = "phi = " + show(rep.phi) +
              (rep.phi_exact ? " = " + to_string(*rep.phi_exact) : std::string()) + " (" +
              graphs::to_string(rep.method) + ")\n";
  o.artifact = dump(j);
  return o;
}

Outcome graphs_menger(const graphs::Graph& g, const std::vector<std::size_t>& a,
                      const std::vector<std::size_t>& b) {
  const metric::Subset sa{a};
  const metric::Subset sb{b};
  sa.check(g.num_vertices());
  sb.check(g.num_vertices());
  const auto paths = graphs::edge_disjoint_paths(g, sa, sb);
  Json j{{"count", paths.count}, {"paths", paths.paths}};
  Json cut = Json::array();
  for (const auto& [u, v] : paths.min_cut) cut.push_back(Json::array({u, v}));
  j["min_cut"] = std::move(cut);
  std::ostringstream s;
  s << paths.count << " edge-disjoint path(s)";
  if (g.is_connected()) {
    const auto rep = graphs::edge_expansion(g);
    const double phi = std::min(1.0, rep.phi);
    const double bound = graphs::menger_lower_bound(phi, a.size(), b.size(), g.num_edges(),
                                                    g.num_vertices());
    const auto guaranteed = static_cast<std::size_t>(std::ceil(bound - 1e-12));
    j["phi"] = rep.phi;
    j["phi_method"] = graphs::to_string(rep.method);
    j["lower_bound"] = guaranteed;
    s << "; expansion guarantees " << guaranteed;
  }
  s << "\n";
  Outcome o;
  o.summary = s.str();
  o.artifact = dump(j);
  return o;
}

// ---- w1 -------------------------------------------------------------------

template <class T>
Json w1_result_json(const wasserstein::W1Result<T>& r, const metric::FiniteMetric<T>& d) {
  Json plan = Json::array();
  for (std::size_t i = 0; i < r.plan.n; ++i) {
    for (std::size_t k = 0; k < r.plan.n; ++k) {
      if (r.plan.at(i, k) != T(0)) {
        plan.push_back(Json::array({d.label(i), d.label(k), io::scalar_to_json(r.plan.at(i, k))}));
      }
    }
  }
  Json potential = Json::object();
  for (std::size_t i = 0; i < r.potential.g.size(); ++i) {
    potential[d.label(i)] = io::scalar_to_json(r.potential.g[i]);
  }
  return Json{{"value", io::scalar_to_json(r.value)},
              {"arithmetic", is_exact_v<T> ? "exact" : "float"},
              {"duality_gap", r.duality_gap},
              {"plan", std::move(plan)},
              {"potential", std::move(potential)}};
}

template <class T>
std::string exact_suffix(const T& v) {
  if constexpr (is_exact_v<T>) {
    return " (exact " + to_string(v) + ")";
  } else {
    return "";
  }
}

template <class T>
Outcome w1_norm_cmd(const Json& mdoc, const Json& fdoc) {
  const auto d = io::metric_from_json<T>(mdoc);
  const wasserstein::SignedMeasure<T> f{io::measure_from_json<T>(fdoc, d)};
  const auto r = wasserstein::w1_norm(f, d);
  Outcome o;
  o.summary = "||f||_W1 = " + show(r.value) + exact_suffix(r.value) + ", duality gap " +
              show(r.duality_gap) + "\n";
  o.artifact = dump(w1_result_json(r, d));
  return o;
}

template <class T>
Outcome w1_distance_cmd(const Json& mdoc, const Json& mu_doc, const Json& nu_doc) {
  const auto d = io::metric_from_json<T>(mdoc);
  const auto r = wasserstein::w1_distance(io::measure_from_json<T>(mu_doc, d),
                                          io::measure_from_json<T>(nu_doc, d), d);
  Outcome o;
  o.summary = "W1(mu, nu) = " + show(r.value) + exact_suffix(r.value) + ", duality gap " +
              show(r.duality_gap) + "\n";
  o.artifact = dump(w1_result_json(r, d));
  return o;
}

// ---- zext / ext -------------------------------------------------------------

template <class T>
Outcome zext_solve(const Json& doc, opt::Backend backend) {
  const auto inst = io::zext_instance_from_json<T>(doc);
  const auto r = zext::relaxation_chain_check(inst, backend);
  Outcome o;
  o.summary = "(MET, EMD, OPT) = (" + show(r.met) + ", " + show(r.emd) + ", " + show(r.opt) + ")\n";
  if (r.arithmetic == Arithmetic::kExact) {
    o.summary += "exact: (" + to_string(Rational(r.met)) + ", " + to_string(Rational(r.emd)) +
                 ", " + to_string(Rational(r.opt)) + ")\n";
  }
  o.artifact = dump(io::zext_result_to_json(r));
  return o;
}

Outcome ext_solve(Json doc, const std::string& target, const Common& c, std::size_t restarts) {
  if (!target.empty()) {
    require(doc.is_object() && doc.contains("target") && doc["target"].is_object(),
            ErrorKind::kDomain, "problem needs a \"target\" object");
    doc["target"]["kind"] = target;
  }
  const auto p = io::extension_problem_from_json(doc);
  ext::ExtensionSolution s;
  if (p.target.kind == ext::TargetKind::kL2) {
    opt::MinimaxOptions opts;
    opts.seed = c.seed;
    opts.restarts = restarts;
    s = ext::min_extension_euclidean(p, opts);
  } else {
    s = ext::min_extension_polyhedral(p, backend_of(c));
  }
  Outcome o;
  o.summary = "minimum " + std::string(ext::to_string(p.target.kind)) + " extension constant " +
              (s.optimal ? "= " : "<= ") + show(s.constant) +
              (s.constant_exact ? " (exact " + to_string(*s.constant_exact) + ")" : "") +
              "; boundary constant " + show(ext::boundary_constant(p)) + "\n";
  o.artifact = dump(io::extension_solution_to_json(s, p));
  return o;
}

// ---- experiments ------------------------------------------------------------

Outcome report_outcome(const std::vector<experiments::Record>& recs,
                       const std::vector<std::string>& statuses, const experiments::Record& meta,
                       const Common& c, std::string summary) {
  Outcome o;
  o.artifact_is_report = true;
  o.artifact = c.format == "json" ? experiments::to_json(recs, meta) : experiments::to_csv(recs);
  o.statuses = statuses;
  for (const auto& st : statuses) o.exit_code = std::max(o.exit_code, exit_code_for_status(st));
  o.summary = std::move(summary);
  return o;
}

Outcome expander_cmd(const std::vector<std::size_t>& ns, std::size_t d, const Common& c) {
  const auto rows = experiments::run_expander_experiment(ns, d, c.seed, backend_of(c));
  std::vector<experiments::Record> recs;
  std::vector<std::string> statuses;
  std::ostringstream s;
  for (const auto& r : rows) {
    recs.push_back(r.record());
    statuses.push_back(r.status);
    s << "n=" << r.n << ": ";
    if (r.status == "ok") {
      s << "minL = " << show(r.min_l) << " (" << (r.min_l_certified ? "certified" : "uncertified")
        << "), bound " << show(r.bound_value) << ", poincare " << (r.poincare_ok ? "ok" : "FAILED")
        << "\n";
    } else {
      s << r.status << "\n";
    }
  }
  experiments::Record meta;
  meta.add("experiment", std::string("expander"));
  meta.add("d", static_cast<std::int64_t>(d));
  meta.add("seed", static_cast<std::int64_t>(c.seed));
  meta.add("arithmetic", c.arithmetic);
  meta.add("log_base", std::string(experiments::kLogBase));
  meta.add("version", std::string(io::kVersion));
  return report_outcome(recs, statuses, meta, c, s.str());
}

Outcome holder_cmd(const std::vector<int>& ns, const std::vector<double>& alphas, const Common& c) {
  const auto rows = experiments::run_holder_experiment(ns, alphas, c.seed);
  std::vector<experiments::Record> recs;
  std::vector<std::string> statuses;
  std::ostringstream s;
  for (const auto& r : rows) {
    recs.push_back(r.record());
    statuses.push_back(r.status);
    s << "n=" << r.n << " alpha=" << show(r.alpha) << ": ";
    if (r.status == "ok") {
      s << "minL <= " << show(r.min_l_upper) << ", bound " << show(r.exact_bound) << " "
        << (r.bound_ok ? "ok" : "FAILED") << ", enflo " << (r.enflo_ok ? "ok" : "FAILED") << "\n";
    } else {
      s << r.status << "\n";
    }
  }
  experiments::Record meta;
  meta.add("experiment", std::string("holder"));
  meta.add("seed", static_cast<std::int64_t>(c.seed));
  meta.add("log_base", std::string(experiments::kLogBase));
  meta.add("version", std::string(io::kVersion));
  return report_outcome(recs, statuses, meta, c, s.str());
}

// ---- plumbing ---------------------------------------------------------------

// The command line minus --out / --manifest, which name artifacts rather than
// determine them.
std::vector<std::string> reproducible_args(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--out" || a == "--manifest") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--manifest=", 0) == 0) continue;
    kept.push_back(a);
  }
  return kept;
}

void emit(const Outcome& o, const Common& c, const std::vector<std::string>& args,
          std::ostream& out) {
  if (!c.out.empty()) {
    io::write_file_atomic(c.out, o.artifact);
    out << o.summary;
  } else if (o.artifact_is_report || c.format == "json") {
    out << o.artifact;
  } else {
    out << o.summary;
  }
  const std::string manifest_path =
      !c.manifest.empty() ? c.manifest : (c.out.empty() ? "" : c.out + ".manifest.json");
  if (manifest_path.empty()) return;
  Json rows = Json::array();
  for (const auto& st : o.statuses) rows.push_back({{"status", st}});
  const Json m{{"tool", "lipext"},
               {"version", io::kVersion},
               {"command", reproducible_args(args)},
               {"seed", c.seed},
               {"arithmetic", c.arithmetic},
               {"log_base", experiments::kLogBase},
               {"format", c.format.empty() ? (o.artifact_is_report ? "csv" : "json") : c.format},
               {"out", c.out},
               {"exit_code", o.exit_code},
               {"rows", std::move(rows)}};
  io::write_file_atomic(manifest_path, dump(m));
}

void add_common(CLI::App* sub, Common& c, bool report) {
  sub->add_option("--arithmetic", c.arithmetic, "exact rationals, floating point, or auto")
      ->check(CLI::IsMember({"auto", "exact", "float"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  const std::vector<std::string> formats =
      report ? std::vector<std::string>{"csv", "json"} : std::vector<std::string>{"text", "json"};
  sub->add_option("--format", c.format,
                  report ? "report format (default csv)" : "stdout format without --out (default text)")
      ->check(CLI::IsMember(formats));
  sub->add_option("--out", c.out, report ? "report file" : "JSON result file");
  sub->add_option("--manifest", c.manifest, "run manifest path (default <out>.manifest.json)");
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err, int depth);

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err, int depth) {
  if (!args.empty() && args.front() == "lipext") args.erase(args.begin());

  CLI::App app{"Lipschitz extension toolkit: finite metrics, W1 norms, 0-extension and "
               "extension LPs, expander and Holder experiments",
               "lipext"};
  app.require_subcommand(1);
  Common c;
  std::vector<std::pair<CLI::App*, std::function<Outcome()>>> leaves;

  // metric
  auto* metric = app.add_subcommand("metric", "finite metric spaces");
  metric->require_subcommand(1);
  std::string file;
  bool semi = false;
  {
    auto* s = metric->add_subcommand("validate", "check the metric axioms exhaustively");
    s->add_option("--file", file, "metric JSON")->required();
    s->add_flag("--semi", semi, "allow zero distances between distinct points");
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      const auto doc = io::read_json_file(file);
      return exact_of(c, false) ? metric_validate<Rational>(doc, semi)
                                : metric_validate<double>(doc, semi);
    });
  }
  std::vector<std::string> subset;
  std::string r_text;
  {
    auto* s = metric->add_subcommand("magnify", "r-magnification at a subset");
    s->add_option("--file", file, "metric JSON")->required();
    s->add_option("--subset", subset, "comma-separated labels")->required()->delimiter(',');
    s->add_option("--r", r_text, "magnification (decimal or p/q)")->required();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      const auto doc = io::read_json_file(file);
      return exact_of(c, false) ? metric_magnify<Rational>(doc, subset, r_text)
                                : metric_magnify<double>(doc, subset, r_text);
    });
  }
  double alpha = 1.0;
  {
    auto* s = metric->add_subcommand("snowflake", "entrywise d^alpha");
    s->add_option("--file", file, "metric JSON")->required();
    s->add_option("--alpha", alpha, "exponent in (0,1]")->required();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      require(c.arithmetic != "exact", ErrorKind::kDomain, "snowflake values are irrational; use --arithmetic float");
      const auto m = metric::snowflake(io::metric_from_json<double>(io::read_json_file(file)), alpha);
      Outcome o;
      o.summary = "snowflake with alpha = " + show(alpha) + " on " + std::to_string(m.size()) + " points\n";
      o.artifact = dump(io::metric_to_json(m));
      return o;
    });
  }
  int cube_n = 0;
  int max_n = kDefaultTwistCap;
  std::optional<double> cube_r;
  std::optional<double> cube_s;
  {
    auto* s = metric->add_subcommand("twist", "twisted hypercube metric on two copies of F_2^n");
    s->add_option("--n", cube_n, "cube dimension")->required();
    s->add_option("--alpha", alpha, "Holder exponent in (1/2,1]")->required();
    s->add_option("--r", cube_r, "layer gap (default n^(1/(4 alpha^2)))");
    s->add_option("--s", cube_s, "layer-1 slope (default n^(-(2 alpha-1)/(4 alpha^2)))");
    s->add_option("--max-n", max_n, "dimension cap")->capture_default_str();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      require(c.arithmetic != "exact", ErrorKind::kDomain, "twisted cube values are irrational; use --arithmetic float");
      require(cube_n >= 1, ErrorKind::kDomain, "--n must be positive");
      require(cube_n <= std::min(max_n, metric::kMaxTwistedCubeDim), ErrorKind::kCapacity,
              "n = " + std::to_string(cube_n) + " exceeds the cap " +
                  std::to_string(std::min(max_n, metric::kMaxTwistedCubeDim)));
      const double n = cube_n;
      const double a2 = 4 * alpha * alpha;
      const double r = cube_r.value_or(std::pow(n, 1 / a2));
      const double sl = cube_s.value_or(std::pow(n, -(2 * alpha - 1) / a2));
      const auto cube = metric::twisted_cube_metric(cube_n, alpha, r, sl);
      Outcome o;
      o.summary = "twisted cube n=" + std::to_string(cube_n) + " alpha=" + show(alpha) + ": " +
                  std::to_string(cube.metric.size()) + " points, r=" + show(r) + ", s=" + show(sl) +
                  ", rs-condition " + (cube.rs_condition ? "holds" : "fails") + "\n";
      if (!cube.warning.empty()) o.summary += "warning: " + cube.warning + "\n";
      Json j{{"n", cube_n}, {"alpha", alpha}, {"r", r}, {"s", sl}, {"rs_condition", cube.rs_condition}};
      if (!cube.warning.empty()) j["warning"] = cube.warning;
      j["metric"] = io::metric_to_json(cube.metric);
      o.artifact = dump(j);
      return o;
    });
  }

  // graphs
  auto* graphs_cmd = app.add_subcommand("graphs", "regular graphs and expansion");
  graphs_cmd->require_subcommand(1);
  std::size_t gn = 0;
  std::size_t gd = 0;
  std::string graph_file;
  {
    auto* s = graphs_cmd->add_subcommand("gen", "uniform connected random d-regular graph");
    s->add_option("--n", gn, "vertices")->required();
    s->add_option("--d", gd, "degree")->required();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      const auto g = graphs::random_regular_graph(gn, gd, c.seed);
      Outcome o;
      o.summary = "random " + std::to_string(gd) + "-regular graph on " + std::to_string(gn) +
                  " vertices, " + std::to_string(g.num_edges()) + " edges, seed " +
                  std::to_string(c.seed) + "\n";
      o.artifact = dump(io::graph_to_json(g));
      return o;
    });
  }
  std::string method = "auto";
  {
    auto* s = graphs_cmd->add_subcommand("expansion", "edge expansion phi(G)");
    s->add_option("--graph", graph_file, "graph JSON")->required();
    s->add_option("--method", method, "exact subset enumeration or spectral lower bound")
        ->check(CLI::IsMember({"auto", "exact", "spectral"}))
        ->capture_default_str();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      return graphs_expansion(io::graph_from_json<double>(io::read_json_file(graph_file)), method);
    });
  }
  std::vector<std::size_t> set_a;
  std::vector<std::size_t> set_b;
  {
    auto* s = graphs_cmd->add_subcommand("menger", "edge-disjoint paths between vertex sets");
    s->add_option("--graph", graph_file, "graph JSON")->required();
    s->add_option("--a", set_a, "comma-separated vertices")->required()->delimiter(',');
    s->add_option("--b", set_b, "comma-separated vertices")->required()->delimiter(',');
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      return graphs_menger(io::graph_from_json<double>(io::read_json_file(graph_file)), set_a, set_b);
    });
  }

  // w1
  auto* w1 = app.add_subcommand("w1", "Wasserstein-1 norms and distances");
  w1->require_subcommand(1);
  std::string metric_file;
  std::string f_file;
  std::string nu_file;
  {
    auto* s = w1->add_subcommand("norm", "||f||_W1 with transport plan and potential");
    s->add_option("--metric", metric_file, "metric JSON")->required();
    s->add_option("--f", f_file, "signed measure JSON")->required();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      const auto m = io::read_json_file(metric_file);
      const auto f = io::read_json_file(f_file);
      return exact_of(c, true) ? w1_norm_cmd<Rational>(m, f) : w1_norm_cmd<double>(m, f);
    });
  }
  {
    auto* s = w1->add_subcommand("distance", "W1(mu, nu) for measures of equal mass");
    s->add_option("--metric", metric_file, "metric JSON")->required();
    s->add_option("--mu", f_file, "measure JSON")->required();
    s->add_option("--nu", nu_file, "measure JSON")->required();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      const auto m = io::read_json_file(metric_file);
      const auto mu = io::read_json_file(f_file);
      const auto nu = io::read_json_file(nu_file);
      return exact_of(c, true) ? w1_distance_cmd<Rational>(m, mu, nu)
                               : w1_distance_cmd<double>(m, mu, nu);
    });
  }

  // zext
  auto* zx = app.add_subcommand("zext", "0-extension relaxations");
  zx->require_subcommand(1);
  std::string instance_file;
  {
    auto* s = zx->add_subcommand("solve", "MET <= EMD <= OPT with witnesses");
    s->add_option("--instance", instance_file, "instance JSON")->required();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      const auto doc = io::read_json_file(instance_file);
      return exact_of(c, true) ? zext_solve<Rational>(doc, opt::Backend::kExact)
                               : zext_solve<double>(doc, backend_of(c));
    });
  }

  // ext
  auto* ex = app.add_subcommand("ext", "minimum Lipschitz/Holder extension");
  ex->require_subcommand(1);
  std::string problem_file;
  std::string target;
  std::size_t restarts = 5;
  {
    auto* s = ex->add_subcommand("solve", "LP for polyhedral targets, descent for l2");
    s->add_option("--problem", problem_file, "problem JSON")->required();
    s->add_option("--target", target, "override the target kind")
        ->check(CLI::IsMember({"w1", "l1", "linf", "l2", "real"}));
    s->add_option("--restarts", restarts, "descent restarts (l2)")->capture_default_str();
    add_common(s, c, false);
    leaves.emplace_back(s, [&] {
      return ext_solve(io::read_json_file(problem_file), target, c, restarts);
    });
  }

  // experiments
  std::vector<std::size_t> exp_n;
  std::size_t exp_d = 4;
  {
    auto* s = app.add_subcommand("expander", "magnified random-regular-graph experiment");
    s->add_option("--n", exp_n, "comma-separated vertex counts")->required()->delimiter(',');
    s->add_option("--d", exp_d, "degree")->capture_default_str();
    add_common(s, c, true);
    leaves.emplace_back(s, [&] { return expander_cmd(exp_n, exp_d, c); });
  }
  std::vector<int> hold_n;
  std::vector<double> hold_alpha;
  {
    auto* s = app.add_subcommand("holder", "twisted-cube Holder extension experiment");
    s->add_option("--n", hold_n, "comma-separated cube dimensions")->required()->delimiter(',');
    s->add_option("--alpha", hold_alpha, "comma-separated exponents")->required()->delimiter(',');
    add_common(s, c, true);
    leaves.emplace_back(s, [&] { return holder_cmd(hold_n, hold_alpha, c); });
  }

  // replay
  std::string replay_file;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_file, "manifest JSON")->required();
  replay->add_option("--out", replay_out, "write the report here instead of the recorded path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*replay) {
      require(depth == 0, ErrorKind::kDomain, "nested replay");
      const auto m = io::read_json_file(replay_file);
      require(m.contains("command") && m["command"].is_array(), ErrorKind::kDomain,
              replay_file + " has no command");
      auto cmd = m["command"].get<std::vector<std::string>>();
      const std::string target_out = !replay_out.empty() ? replay_out : m.value("out", std::string());
      if (!target_out.empty()) {
        cmd.push_back("--out");
        cmd.push_back(target_out);
      }
      return run(cmd, out, err, depth + 1);
    }
    for (auto& [sub, handler] : leaves) {
      if (!*sub) continue;
      const Outcome o = handler();
      emit(o, c, args, out);
      return o.exit_code;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error (domain): " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run(args, out, err, 0);
}

}  // namespace lipext::cli
