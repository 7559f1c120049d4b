#include "lipext/io/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lipext/core/error.hpp"
#include "lipext/core/format.hpp"

namespace lipext::io {

using metric::FiniteMetric;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kDomain, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kDomain, path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::kDomain, "cannot write " + tmp);
    out << content;
    out.flush();
    require(static_cast<bool>(out), ErrorKind::kDomain, "write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorKind::kDomain, "cannot rename " + tmp + ": " + ec.message());
  }
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { fail(ErrorKind::kDomain, "not a number: '" + text + "'"); };
  if (text.empty()) bad();
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const auto integral = [](const std::string& s) {
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
      }
      return true;
    };
    if (!integral(num) || !integral(den)) bad();
    const Rational d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) fail(ErrorKind::kDomain, "zero denominator: '" + text + "'");
    return Rational(num[0] == '+' ? num.substr(1) : num) / d;
  }
  // [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') negative = text[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool any = false;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, any = true) digits += text[i];
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, any = true) {
      digits += text[i];
      --exponent;
    }
  }
  if (!any) bad();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) bad();
    for (std::size_t k = i; k < text.size(); ++k) {
      if (text[k] < '0' || text[k] > '9') bad();
    }
    require(text.size() - start <= 6, ErrorKind::kDomain, "exponent out of range: '" + text + "'");
    exponent += std::stol(text.substr(start));
    i = text.size();
  }
  if (i != text.size()) bad();
  Rational value(digits);
  Rational scale(1);
  for (long k = 0; k < std::labs(exponent); ++k) scale *= 10;
  value = exponent >= 0 ? value * scale : value / scale;
  return negative ? -value : value;
}

Rational rational_from_json(const Json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(v.get<std::uint64_t>()) : Rational(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    require(std::isfinite(d), ErrorKind::kDomain, "non-finite number");
    return parse_rational(format_double(d));
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  fail(ErrorKind::kDomain, "expected a number, got " + v.dump());
}

double double_from_json(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find('/') == std::string::npos) {
      parse_rational(s);  // validates the syntax
      return std::stod(s);
    }
    return to_double(parse_rational(s));
  }
  fail(ErrorKind::kDomain, "expected a number, got " + v.dump());
}

Json scalar_to_json(double v) {
  if (!std::isfinite(v)) return format_double(v);
  return v;
}

Json scalar_to_json(const Rational& v) { return to_string(v); }

namespace {

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), ErrorKind::kDomain, std::string("expected an object with \"") + key + "\"");
  const auto it = j.find(key);
  require(it != j.end(), ErrorKind::kDomain, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t index_from_json(const Json& v, std::size_t n, const char* what) {
  require(v.is_number_integer() && v.get<std::int64_t>() >= 0, ErrorKind::kDomain,
          std::string(what) + " must be a nonnegative integer, got " + v.dump());
  const auto i = v.get<std::size_t>();
  require(i < n, ErrorKind::kDomain, std::string(what) + " out of range: " + v.dump());
  return i;
}

template <class T>
std::vector<std::vector<T>> matrix_from_json(const Json& j) {
  require(j.is_array(), ErrorKind::kShape, "distance matrix must be an array of rows");
  std::vector<std::vector<T>> rows;
  rows.reserve(j.size());
  for (const auto& r : j) {
    require(r.is_array(), ErrorKind::kShape, "distance matrix row must be an array");
    auto& row = rows.emplace_back();
    row.reserve(r.size());
    for (const auto& x : r) row.push_back(scalar_from_json<T>(x));
  }
  return rows;
}

std::string label_from_json(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  require(v.is_number_integer(), ErrorKind::kDomain, "point labels must be strings or integers");
  return v.dump();
}

}  // namespace

template <class T>
FiniteMetric<T> metric_from_json(const Json& j) {
  auto rows = matrix_from_json<T>(field(j, "dist"));
  std::vector<std::string> labels;
  if (const auto it = j.find("points"); it != j.end()) {
    require(it->is_array(), ErrorKind::kDomain, "\"points\" must be an array");
    for (const auto& p : *it) labels.push_back(label_from_json(p));
    require(labels.size() == rows.size(), ErrorKind::kShape, "\"points\" and \"dist\" sizes differ");
  }
  return FiniteMetric<T>::from_rows(rows, std::move(labels));
}

template <class T>
Json metric_to_json(const FiniteMetric<T>& m) {
  Json j;
  j["points"] = m.labels();
  Json dist = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(scalar_to_json(m(i, k)));
    dist.push_back(std::move(row));
  }
  j["dist"] = std::move(dist);
  return j;
}

template <class T>
graphs::WeightedGraph<T> graph_from_json(const Json& j) {
  const Json& n_field = field(j, "n");
  require(n_field.is_number_integer() && n_field.get<std::int64_t>() >= 0, ErrorKind::kDomain,
          "\"n\" must be a nonnegative integer");
  const auto n = n_field.get<std::size_t>();
  graphs::WeightedGraph<T> g(n);
  const Json& edges = field(j, "edges");
  require(edges.is_array(), ErrorKind::kDomain, "\"edges\" must be an array");
  for (const auto& e : edges) {
    require(e.is_array() && (e.size() == 2 || e.size() == 3), ErrorKind::kDomain,
            "edge must be [u, v] or [u, v, weight], got " + e.dump());
    const std::size_t u = index_from_json(e[0], n, "edge endpoint");
    const std::size_t v = index_from_json(e[1], n, "edge endpoint");
    g.add_edge(std::min(u, v), std::max(u, v), e.size() == 3 ? scalar_from_json<T>(e[2]) : T(1));
  }
  return g;
}

template <class T>
Json graph_to_json(const graphs::WeightedGraph<T>& g) {
  Json j;
  j["n"] = g.num_vertices();
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.u, e.v, scalar_to_json(e.weight)}));
  j["edges"] = std::move(edges);
  return j;
}

template <class T>
std::vector<T> measure_from_json(const Json& j, const FiniteMetric<T>& base) {
  const Json& values = field(j, "values");
  require(values.is_object(), ErrorKind::kDomain, "\"values\" must map labels to numbers");
  std::vector<T> f(base.size(), T(0));
  for (const auto& [label, x] : values.items()) f[base.index_of(label)] = scalar_from_json<T>(x);
  return f;
}

template <class T>
zext::ZeroExtensionInstance<T> zext_instance_from_json(const Json& j) {
  zext::ZeroExtensionInstance<T> inst;
  inst.graph = graph_from_json<T>(field(j, "graph"));
  const Json& terms = field(j, "terminals");
  require(terms.is_array(), ErrorKind::kDomain, "\"terminals\" must be an array");
  std::vector<std::string> labels;
  for (const auto& t : terms) {
    inst.terminals.indices.push_back(index_from_json(t, inst.graph.num_vertices(), "terminal"));
    labels.push_back(t.dump());
  }
  const auto rows = matrix_from_json<T>(field(j, "d_T"));
  require(rows.size() == labels.size(), ErrorKind::kShape, "d_T size differs from the terminal count");
  inst.d_t = FiniteMetric<T>::from_rows(rows, std::move(labels));
  inst.check();
  return inst;
}

template <class T>
Json zext_result_to_json(const zext::ZeroExtensionResult<T>& r) {
  Json j;
  j["arithmetic"] = to_string(r.arithmetic);
  j["MET"] = scalar_to_json(r.met);
  j["EMD"] = scalar_to_json(r.emd);
  j["OPT"] = scalar_to_json(r.opt);
  j["opt_partition"] = r.opt_partition;
  j["met_metric"] = metric_to_json(r.met_metric);
  Json measures = Json::array();
  for (const auto& mu : r.emd_measures) {
    Json row = Json::array();
    for (const auto& x : mu) row.push_back(scalar_to_json(x));
    measures.push_back(std::move(row));
  }
  j["emd_measures"] = std::move(measures);
  return j;
}

metric::Subset subset_from_labels(const std::vector<std::string>& labels,
                                  const FiniteMetric<double>& m) {
  metric::Subset s;
  for (const auto& l : labels) s.indices.push_back(m.index_of(l));
  s.check(m.size());
  return s;
}

ext::ExtensionProblem extension_problem_from_json(const Json& j) {
  ext::ExtensionProblem p;
  p.ambient = metric_from_json<double>(field(j, "ambient"));
  if (const auto it = j.find("alpha"); it != j.end()) p.alpha = double_from_json(*it);

  const Json& target = field(j, "target");
  const auto kind = ext::parse_target_kind(field(target, "kind").get<std::string>());

  const Json& boundary = field(j, "boundary");
  require(boundary.is_object(), ErrorKind::kDomain, "\"boundary\" must map labels to vectors");
  std::vector<std::string> labels;
  if (const auto it = j.find("subset"); it != j.end()) {
    for (const auto& l : *it) labels.push_back(label_from_json(l));
  } else {
    for (const auto& [label, v] : boundary.items()) labels.push_back(label);
  }
  p.subset = subset_from_labels(labels, p.ambient);
  for (const auto& l : labels) {
    const auto it = boundary.find(l);
    require(it != boundary.end(), ErrorKind::kDomain, "no boundary value for '" + l + "'");
    auto& v = p.boundary.emplace_back();
    if (it->is_array()) {
      for (const auto& x : *it) v.push_back(double_from_json(x));
    } else {
      v.push_back(double_from_json(*it));
    }
  }

  std::size_t dim = p.boundary.empty() ? 1 : p.boundary.front().size();
  if (const auto it = target.find("dim"); it != target.end()) dim = it->get<std::size_t>();
  switch (kind) {
    case ext::TargetKind::kReal: p.target = ext::TargetSpace::real(); break;
    case ext::TargetKind::kL1: p.target = ext::TargetSpace::l1(dim); break;
    case ext::TargetKind::kLinf: p.target = ext::TargetSpace::linf(dim); break;
    case ext::TargetKind::kL2: p.target = ext::TargetSpace::euclidean(dim); break;
    case ext::TargetKind::kW1:
      p.target = ext::TargetSpace::wasserstein(metric_from_json<double>(field(target, "base")));
      break;
  }
  p.check();
  return p;
}

Json extension_solution_to_json(const ext::ExtensionSolution& s,
                                const ext::ExtensionProblem& p) {
  Json j;
  j["target"] = ext::to_string(p.target.kind);
  j["alpha"] = p.alpha;
  j["arithmetic"] = to_string(s.arithmetic);
  j["optimal"] = s.optimal;
  j["constant"] = scalar_to_json(s.constant);
  if (s.constant_exact) j["constant_exact"] = scalar_to_json(*s.constant_exact);
  j["boundary_constant"] = scalar_to_json(ext::boundary_constant(p));
  Json values = Json::object();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    Json v = Json::array();
    if (!s.values_exact.empty()) {
      for (const auto& x : s.values_exact[i]) v.push_back(scalar_to_json(x));
    } else {
      for (double x : s.values[i]) v.push_back(scalar_to_json(x));
    }
    values[p.ambient.label(i)] = std::move(v);
  }
  j["values"] = std::move(values);
  if (s.optimal && p.target.kind != ext::TargetKind::kL2) {
    j["lp"] = {{"objective", scalar_to_json(s.lp_objective)},
               {"dual_objective", scalar_to_json(s.lp_dual_objective)},
               {"gap", scalar_to_json(s.lp_gap)},
               {"rows", s.lp_rows},
               {"columns", s.lp_columns},
               {"nonzeros", s.lp_nonzeros}};
  }
  if (!s.trace.empty()) {
    Json restarts = Json::array();
    for (const auto& t : s.trace) {
      restarts.push_back({{"seed", t.seed},
                          {"iterations", t.iterations},
                          {"value", scalar_to_json(t.value)},
                          {"converged", t.converged}});
    }
    j["restarts"] = std::move(restarts);
    j["converged"] = s.converged;
  }
  return j;
}

template FiniteMetric<double> metric_from_json(const Json&);
template FiniteMetric<Rational> metric_from_json(const Json&);
template Json metric_to_json(const FiniteMetric<double>&);
template Json metric_to_json(const FiniteMetric<Rational>&);
template graphs::WeightedGraph<double> graph_from_json(const Json&);
template graphs::WeightedGraph<Rational> graph_from_json(const Json&);
template Json graph_to_json(const graphs::WeightedGraph<double>&);
template Json graph_to_json(const graphs::WeightedGraph<Rational>&);
template std::vector<double> measure_from_json(const Json&, const FiniteMetric<double>&);
template std::vector<Rational> measure_from_json(const Json&, const FiniteMetric<Rational>&);
template zext::ZeroExtensionInstance<double> zext_instance_from_json(const Json&);
template zext::ZeroExtensionInstance<Rational> zext_instance_from_json(const Json&);
template Json zext_result_to_json(const zext::ZeroExtensionResult<double>&);
template Json zext_result_to_json(const zext::ZeroExtensionResult<Rational>&);

}  // namespace lipext::io
