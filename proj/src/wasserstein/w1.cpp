#include "lipext/wasserstein/w1.hpp"

#include <algorithm>
#include <cmath>

#include "lipext/core/error.hpp"
#include "lipext/metric/constructions.hpp"
#include "lipext/opt/min_cost_flow.hpp"

namespace lipext::wasserstein {

template <class T>
void SignedMeasure<T>::check(std::size_t n) const {
  require(values.size() == n, ErrorKind::kShape,
          "signed measure has " + std::to_string(values.size()) +
              " values for " + std::to_string(n) + " points");
  T sum(0);
  T mass(0);
  for (const auto& v : values) {
    sum += v;
    mass += abs_value(v);
  }
  if constexpr (is_exact_v<T>) {
    require(sum == T(0), ErrorKind::kDomain, "signed measure must sum to zero");
  } else {
    require(std::fabs(sum) <= 1e-12 * std::max(1.0, mass), ErrorKind::kDomain,
            "signed measure must sum to zero");
  }
}

template <class T>
SignedMeasure<T> SignedMeasure<T>::dirac_difference(std::size_t n,
                                                    std::size_t x,
                                                    std::size_t y) {
  SignedMeasure<T> f;
  f.values.assign(n, T(0));
  f.values[x] += T(1);
  f.values[y] -= T(1);
  return f;
}

template <class T>
T l1_norm(const std::vector<T>& f) {
  T s(0);
  for (const auto& v : f) s += abs_value(v);
  return s;
}

namespace {

template <class T>
void check_mass(const std::vector<T>& mu, const std::vector<T>& nu,
                std::size_t n) {
  require(mu.size() == n && nu.size() == n, ErrorKind::kShape,
          "measure size does not match the metric");
  T a(0), b(0);
  for (std::size_t i = 0; i < n; ++i) {
    require(!(mu[i] < T(0)) && !(nu[i] < T(0)), ErrorKind::kDomain,
            "W1 distance needs nonnegative measures");
    a += mu[i];
    b += nu[i];
  }
  if constexpr (is_exact_v<T>) {
    require(a == b, ErrorKind::kDomain, "measures have different total mass");
  } else {
    require(std::fabs(a - b) <= 1e-12 * std::max(1.0, a + b), ErrorKind::kDomain,
            "measures have different total mass");
  }
}

// Transport from supp(mu) to supp(nu) plus the source-side potential u with
// u(x) - u'(y) <= d(x,y), tight on the flow.
template <class T>
W1Result<T> transport(const std::vector<T>& mu, const std::vector<T>& nu,
                      const metric::FiniteMetric<T>& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> src, dst;
  for (std::size_t i = 0; i < n; ++i) {
    if (mu[i] > T(0)) src.push_back(i);
    if (nu[i] > T(0)) dst.push_back(i);
  }
  W1Result<T> out;
  out.plan.n = n;
  out.plan.plan.assign(n * n, T(0));
  out.potential.g.assign(n, T(0));
  if (src.empty() || dst.empty()) return out;

  opt::FlowNetwork<T> net;
  net.supply.assign(src.size() + dst.size(), T(0));
  for (std::size_t a = 0; a < src.size(); ++a) net.supply[a] = mu[src[a]];
  for (std::size_t b = 0; b < dst.size(); ++b) {
    net.supply[src.size() + b] = -nu[dst[b]];
  }
  for (std::size_t a = 0; a < src.size(); ++a) {
    for (std::size_t b = 0; b < dst.size(); ++b) {
      net.add_arc(a, src.size() + b, d(src[a], dst[b]));
    }
  }
  const auto res = opt::min_cost_flow(net);
  require(res.feasible, ErrorKind::kInvariant,
          "complete bipartite transport must be feasible");

  std::size_t arc = 0;
  for (std::size_t a = 0; a < src.size(); ++a) {
    for (std::size_t b = 0; b < dst.size(); ++b, ++arc) {
      out.plan.plan[src[a] * n + dst[b]] += res.flow[arc];
    }
  }
  out.value = res.cost;
  out.plan.cost = res.cost;

  // Source potentials u = -pi; extend by g(z) = max_x (u(x) - d(x,z)).
  for (std::size_t z = 0; z < n; ++z) {
    bool first = true;
    T best(0);
    for (std::size_t a = 0; a < src.size(); ++a) {
      T cand = -res.potential[a] - d(src[a], z);
      if (first || best < cand) {
        best = std::move(cand);
        first = false;
      }
    }
    out.potential.g[z] = best;
  }
  return out;
}

template <class T>
double gap_of(const T& value, const std::vector<T>& f,
              const LipschitzPotential<T>& g) {
  T dual(0);
  for (std::size_t i = 0; i < f.size(); ++i) dual += f[i] * g.g[i];
  return std::fabs(lipext::to_double(T(value - dual)));
}

}  // namespace

template <class T>
W1Result<T> w1_distance(const std::vector<T>& mu, const std::vector<T>& nu,
                        const metric::FiniteMetric<T>& d) {
  check_mass(mu, nu, d.size());
  auto out = transport(mu, nu, d);
  std::vector<T> diff(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) diff[i] = mu[i] - nu[i];
  out.duality_gap = gap_of(out.value, diff, out.potential);
  return out;
}

template <class T>
W1Result<T> w1_norm(const SignedMeasure<T>& f,
                    const metric::FiniteMetric<T>& d) {
  f.check(d.size());
  std::vector<T> pos(f.size(), T(0)), neg(f.size(), T(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i] > T(0)) pos[i] = f.values[i];
    if (f.values[i] < T(0)) neg[i] = -f.values[i];
  }
  if constexpr (!is_exact_v<T>) {
    // Rebalance float round-off so the flow network is exactly feasible.
    double sp = 0.0, sn = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      sp += pos[i];
      sn += neg[i];
    }
    if (sp > 0.0 && sn > 0.0 && sp != sn) {
      for (auto& v : neg) v *= sp / sn;
    }
  }
  auto out = transport(pos, neg, d);
  out.duality_gap = gap_of(out.value, f.values, out.potential);
  return out;
}

template <class T>
T w1_norm_value(const std::vector<T>& f, const metric::FiniteMetric<T>& d) {
  return w1_norm(SignedMeasure<T>{f}, d).value;
}

template <class T>
double lipschitz_excess(const LipschitzPotential<T>& g,
                        const metric::FiniteMetric<T>& d) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (std::size_t y = x + 1; y < d.size(); ++y) {
      const T e = abs_value(T(g.g[x] - g.g[y])) - d(x, y);
      worst = std::max(worst, lipext::to_double(e));
    }
  }
  return d.size() < 2 ? 0.0 : worst;
}

template <class T>
SandwichReport<T> w1_sandwich_check(const SignedMeasure<T>& f,
                                    const metric::FiniteMetric<T>& d,
                                    double tol) {
  SandwichReport<T> rep;
  rep.l1 = l1_norm(f.values);
  rep.w1 = w1_norm(f, d).value;
  const auto all = metric::Subset::all(d.size());
  rep.lower = metric::min_positive_distance(d, all) / T(2) * rep.l1;
  rep.upper = metric::diameter(d) / T(2) * rep.l1;
  rep.slack_lower = rep.w1 - rep.lower;
  rep.slack_upper = rep.upper - rep.w1;
  rep.holds = leq(rep.lower, rep.w1, tol) && leq(rep.w1, rep.upper, tol);
  return rep;
}

template <class T>
SandwichReport<T> w1_sandwich_check_magnified(const SignedMeasure<T>& f,
                                              const metric::FiniteMetric<T>& x,
                                              const metric::Subset& s,
                                              const T& r, double tol) {
  const auto mag = metric::restrict_to(metric::magnify(x, s, r), s);
  SandwichReport<T> rep;
  rep.l1 = l1_norm(f.values);
  rep.w1 = w1_norm(f, mag).value;
  rep.lower = r * rep.l1;
  rep.upper = (r + metric::diameter(x) / T(2)) * rep.l1;
  rep.slack_lower = rep.w1 - rep.lower;
  rep.slack_upper = rep.upper - rep.w1;
  rep.holds = leq(rep.lower, rep.w1, tol) && leq(rep.w1, rep.upper, tol);
  return rep;
}

template <class T>
PoincareReport<T> poincare_check(const graphs::WeightedGraph<T>& g,
                                 const metric::Subset& s, const T& r,
                                 const std::vector<SignedMeasure<T>>& f,
                                 const T& phi, double tol) {
  require(T(0) < phi && !(T(1) < phi), ErrorKind::kDomain,
          "Poincare check needs phi in (0, 1]");
  const std::size_t n = g.num_vertices();
  require(f.size() == n, ErrorKind::kShape, "F must be defined on every vertex");
  require(g.num_edges() > 0, ErrorKind::kDomain, "graph has no edges");
  s.check(n, true);

  const auto base = metric::shortest_path_metric(g);
  const auto on_s = metric::restrict_to(metric::magnify(base, s, r), s);
  for (const auto& m : f) m.check(s.size());

  auto norm_diff = [&](std::size_t x, std::size_t y) {
    std::vector<T> diff(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      diff[i] = f[x].values[i] - f[y].values[i];
    }
    return w1_norm_value(diff, on_s);
  };

  PoincareReport<T> rep;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) rep.lhs += norm_diff(x, y);
  }
  rep.lhs /= T(static_cast<long>(n * n));
  for (const auto& e : g.edges()) rep.edge_average += norm_diff(e.u, e.v);
  rep.edge_average /= T(static_cast<long>(g.num_edges()));
  rep.coefficient = (T(2) * r + metric::diameter(base, s)) /
                    ((T(2) * r + T(1)) * phi);
  rep.rhs = rep.coefficient * rep.edge_average;
  rep.holds = leq(rep.lhs, rep.rhs, tol);
  return rep;
}

#define LIPEXT_INSTANTIATE(T)                                                  \
  template struct SignedMeasure<T>;                                            \
  template T l1_norm(const std::vector<T>&);                                   \
  template W1Result<T> w1_distance(const std::vector<T>&,                      \
                                   const std::vector<T>&,                      \
                                   const metric::FiniteMetric<T>&);            \
  template W1Result<T> w1_norm(const SignedMeasure<T>&,                        \
                               const metric::FiniteMetric<T>&);                \
  template T w1_norm_value(const std::vector<T>&,                              \
                           const metric::FiniteMetric<T>&);                    \
  template double lipschitz_excess(const LipschitzPotential<T>&,               \
                                   const metric::FiniteMetric<T>&);            \
  template SandwichReport<T> w1_sandwich_check(                                \
      const SignedMeasure<T>&, const metric::FiniteMetric<T>&, double);        \
  template SandwichReport<T> w1_sandwich_check_magnified(                      \
      const SignedMeasure<T>&, const metric::FiniteMetric<T>&,                 \
      const metric::Subset&, const T&, double);                                \
  template PoincareReport<T> poincare_check(                                   \
      const graphs::WeightedGraph<T>&, const metric::Subset&, const T&,        \
      const std::vector<SignedMeasure<T>>&, const T&, double);

LIPEXT_INSTANTIATE(double)
LIPEXT_INSTANTIATE(Rational)
#undef LIPEXT_INSTANTIATE

}  // namespace lipext::wasserstein
