#include "lipext/metric/constructions.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "lipext/core/error.hpp"
#include "lipext/simd/kernels.hpp"

namespace lipext::metric {

namespace {

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

// All-pairs shortest paths over a dense matrix where `reach[i*n+j]` marks
// finite entries.
template <class T>
void floyd_warshall(std::vector<T>& d, std::vector<char>& reach, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i * n + k]) continue;
      const T dik = d[i * n + k];
      for (std::size_t j = 0; j < n; ++j) {
        if (!reach[k * n + j]) continue;
        T cand = dik + d[k * n + j];
        if (!reach[i * n + j] || cand < d[i * n + j]) {
          d[i * n + j] = std::move(cand);
          reach[i * n + j] = 1;
        }
      }
    }
  }
}

// Double specialization uses +inf for missing entries and the SIMD min-plus
// kernel for the inner loop.
void floyd_warshall_double(std::vector<double>& d, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const std::span<const double> row_k(d.data() + k * n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (std::isinf(dik)) continue;
      simd::min_plus_relax({d.data() + i * n, n}, dik, row_k);
    }
  }
}

template <class T>
std::vector<T> apsp(std::size_t n,
                    const std::vector<std::tuple<std::size_t, std::size_t, T>>& arcs) {
  if constexpr (std::is_same_v<T, double>) {
    std::vector<double> d(n * n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
    for (const auto& [u, v, w] : arcs) {
      d[u * n + v] = std::min(d[u * n + v], w);
      d[v * n + u] = std::min(d[v * n + u], w);
    }
    floyd_warshall_double(d, n);
    for (double v : d) {
      require(!std::isinf(v), ErrorKind::kConnectivity, "graph is disconnected");
    }
    return d;
  } else {
    std::vector<T> d(n * n, T(0));
    std::vector<char> reach(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) reach[i * n + i] = 1;
    for (const auto& [u, v, w] : arcs) {
      for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
        if (!reach[a * n + b] || w < d[a * n + b]) {
          d[a * n + b] = w;
          reach[a * n + b] = 1;
        }
      }
    }
    floyd_warshall(d, reach, n);
    for (char r : reach) {
      require(r != 0, ErrorKind::kConnectivity, "graph is disconnected");
    }
    return d;
  }
}

}  // namespace

template <class T>
FiniteMetric<T> shortest_path_metric(const graphs::WeightedGraph<T>& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::tuple<std::size_t, std::size_t, T>> arcs;
  arcs.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    require(T(0) < e.weight, ErrorKind::kDomain,
            "shortest-path metric needs positive edge weights");
    arcs.emplace_back(e.u, e.v, e.weight);
  }
  return FiniteMetric<T>(index_labels(n), apsp<T>(n, arcs));
}

template <class T>
FiniteMetric<T> magnify(const FiniteMetric<T>& x, const Subset& s, const T& r) {
  require(T(0) < r, ErrorKind::kDomain, "magnification needs r > 0");
  s.check(x.size(), false);
  const std::size_t n = x.size();
  const auto in_s = s.mask(n);
  std::vector<T> d(x.data());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int hits = in_s[i] + in_s[j];
      if (hits > 0) d[i * n + j] += r * T(hits);
    }
  }
  return FiniteMetric<T>(x.labels(), std::move(d));
}

FiniteMetric<double> snowflake(const FiniteMetric<double>& x, double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::kDomain,
          "snowflake exponent must lie in (0,1]");
  std::vector<double> d(x.data());
  if (alpha != 1.0) {
    for (double& v : d) v = std::pow(v, alpha);
  }
  return FiniteMetric<double>(x.labels(), std::move(d));
}

template <class T>
FiniteMetric<T> glue_metric(const FiniteMetric<T>& x, const FiniteMetric<T>& y,
                            const std::vector<std::size_t>& sigma, const T& r) {
  require(T(0) < r, ErrorKind::kDomain, "glue weight must be positive");
  require(sigma.size() == x.size(), ErrorKind::kDomain,
          "sigma must be defined on every point of X");
  const std::size_t nx = x.size();
  const std::size_t n = nx + y.size();
  std::vector<std::tuple<std::size_t, std::size_t, T>> arcs;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = i + 1; j < nx; ++j) arcs.emplace_back(i, j, x(i, j));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      arcs.emplace_back(nx + i, nx + j, y(i, j));
    }
  }
  for (std::size_t i = 0; i < nx; ++i) {
    require(sigma[i] < y.size(), ErrorKind::kDomain, "sigma image out of range");
    arcs.emplace_back(i, nx + sigma[i], r);
  }

  std::set<std::string> seen(x.labels().begin(), x.labels().end());
  bool collide = seen.size() != x.size();
  for (const auto& l : y.labels()) collide = collide || !seen.insert(l).second;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& l : x.labels()) labels.push_back(collide ? "X." + l : l);
  for (const auto& l : y.labels()) labels.push_back(collide ? "Y." + l : l);
  return FiniteMetric<T>(std::move(labels), apsp<T>(n, arcs));
}

HypercubePoint HypercubePoint::from_index(std::size_t idx, int n) {
  HypercubePoint p;
  p.n = n;
  p.layer = static_cast<int>(idx >> n);
  p.word = static_cast<std::uint32_t>(idx & ((std::size_t{1} << n) - 1));
  return p;
}

std::string HypercubePoint::label() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(n) + 2);
  for (int b = 0; b < n; ++b) s.push_back((word >> b) & 1U ? '1' : '0');
  s.push_back('/');
  s.push_back(layer ? '1' : '0');
  return s;
}

namespace {

void check_alpha_half_open(double alpha) {
  require(alpha > 0.5 && alpha <= 1.0, ErrorKind::kDomain,
          "alpha must lie in (1/2, 1]");
}

}  // namespace

bool check_rs_condition(double alpha, double r, double s) {
  check_alpha_half_open(alpha);
  require(r > 0.0 && s > 0.0, ErrorKind::kDomain, "r and s must be positive");
  const double two_a = 2.0 * alpha;
  const double e = two_a - 1.0;
  const double lhs = std::pow(two_a, two_a) * s * std::pow(2.0 * r, e);
  const double rhs = std::pow(std::pow(two_a, two_a / e) - 1.0, e);
  return lhs >= rhs;
}

TwistedCube twisted_cube_metric(int n, double alpha, double r, double s) {
  require(n >= 1, ErrorKind::kDomain, "hypercube dimension must be positive");
  require(n <= kMaxTwistedCubeDim, ErrorKind::kCapacity,
          "twisted cube limited to n <= " + std::to_string(kMaxTwistedCubeDim));
  TwistedCube out;
  out.rs_condition = check_rs_condition(alpha, r, s);
  if (!out.rs_condition) {
    out.warning = "rs-condition fails; metric validity is not guaranteed";
  }

  const double q = 1.0 / (2.0 * alpha);
  // Per-Hamming-weight values of the three cases.
  std::vector<double> same0(n + 1), same1(n + 1), cross(n + 1);
  for (int h = 0; h <= n; ++h) {
    const double root = std::pow(static_cast<double>(h), q);
    same0[h] = root;
    same1[h] = std::min(s * h, 2.0 * r + root);
    cross[h] = r + std::min(s * h, root);
  }

  const std::size_t cube = std::size_t{1} << n;
  const std::size_t total = 2 * cube;
  std::vector<std::string> labels;
  labels.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    labels.push_back(HypercubePoint::from_index(i, n).label());
  }
  std::vector<double> d(total * total);
  for (std::size_t a = 0; a < total; ++a) {
    const std::size_t la = a >> n;
    const std::size_t wa = a & (cube - 1);
    for (std::size_t b = 0; b < total; ++b) {
      const std::size_t lb = b >> n;
      const int h = __builtin_popcountll(wa ^ (b & (cube - 1)));
      double v;
      if (la != lb) {
        v = cross[h];
      } else if (la == 0) {
        v = same0[h];
      } else {
        v = same1[h];
      }
      d[a * total + b] = v;
    }
  }
  out.metric = FiniteMetric<double>(std::move(labels), std::move(d));
  return out;
}

template FiniteMetric<double> shortest_path_metric(
    const graphs::WeightedGraph<double>&);
template FiniteMetric<Rational> shortest_path_metric(
    const graphs::WeightedGraph<Rational>&);
template FiniteMetric<double> magnify(const FiniteMetric<double>&,
                                      const Subset&, const double&);
template FiniteMetric<Rational> magnify(const FiniteMetric<Rational>&,
                                        const Subset&, const Rational&);
template FiniteMetric<double> glue_metric(const FiniteMetric<double>&,
                                          const FiniteMetric<double>&,
                                          const std::vector<std::size_t>&,
                                          const double&);
template FiniteMetric<Rational> glue_metric(const FiniteMetric<Rational>&,
                                            const FiniteMetric<Rational>&,
                                            const std::vector<std::size_t>&,
                                            const Rational&);

}  // namespace lipext::metric
