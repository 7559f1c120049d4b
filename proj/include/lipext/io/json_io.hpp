#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lipext/core/scalar.hpp"
#include "lipext/ext/extension.hpp"
#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"
#include "lipext/wasserstein/w1.hpp"
#include "lipext/zext/zero_extension.hpp"

// JSON schemas:
//   metric      {"points": [label, ...], "dist": [[x, ...], ...]}
//   graph       {"n": int, "edges": [[u, v, w], ...]}
//   measure     {"base": name, "values": {label: x, ...}}   (absent labels are 0)
//   zext        {"graph": graph, "terminals": [vertex, ...], "d_T": [[x, ...], ...]}
//   ext problem {"ambient": metric, "subset": [label, ...], "alpha": x,
//                "target": {"kind": "w1"|"l1"|"linf"|"l2"|"real", "dim": k,
//                           "base": metric},
//                "boundary": {label: [x, ...] | x, ...}}
// A scalar x is a JSON number or a string holding a decimal ("0.25", "1e-3")
// or a fraction ("3/2"). Exact decoding reads decimals at face value.
namespace lipext::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// kDomain when the file is missing or not valid JSON.
Json read_json_file(const std::string& path);

// Writes to "<path>.tmp" and renames over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

Rational parse_rational(const std::string& text);
Rational rational_from_json(const Json& v);
double double_from_json(const Json& v);

template <class T>
T scalar_from_json(const Json& v) {
  if constexpr (is_exact_v<T>) {
    return rational_from_json(v);
  } else {
    return double_from_json(v);
  }
}

// Doubles become numbers; rationals become strings ("3/2", "2").
Json scalar_to_json(double v);
Json scalar_to_json(const Rational& v);

template <class T>
metric::FiniteMetric<T> metric_from_json(const Json& j);
template <class T>
Json metric_to_json(const metric::FiniteMetric<T>& m);

template <class T>
graphs::WeightedGraph<T> graph_from_json(const Json& j);
template <class T>
Json graph_to_json(const graphs::WeightedGraph<T>& g);

// Values indexed like `base`; kDomain on unknown labels.
template <class T>
std::vector<T> measure_from_json(const Json& j, const metric::FiniteMetric<T>& base);

template <class T>
zext::ZeroExtensionInstance<T> zext_instance_from_json(const Json& j);
template <class T>
Json zext_result_to_json(const zext::ZeroExtensionResult<T>& r);

ext::ExtensionProblem extension_problem_from_json(const Json& j);
Json extension_solution_to_json(const ext::ExtensionSolution& s,
                                const ext::ExtensionProblem& p);

// Labels resolved against `m`; kDomain on unknown labels.
metric::Subset subset_from_labels(const std::vector<std::string>& labels,
                                  const metric::FiniteMetric<double>& m);

}  // namespace lipext::io
