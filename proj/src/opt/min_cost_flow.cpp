#include "lipext/opt/min_cost_flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lipext/core/error.hpp"

namespace lipext::opt {

template <class T>
std::size_t FlowNetwork<T>::add_arc(std::size_t from, std::size_t to, T cost,
                                    std::optional<T> capacity) {
  arcs.push_back({from, to, std::move(cost), std::move(capacity)});
  return arcs.size() - 1;
}

namespace {

// Residual graph over the network's nodes plus a super source and sink.
template <class T>
struct Residual {
  struct Edge {
    std::size_t to;
    std::size_t rev;
    T cost;
    T cap;
    bool infinite;
  };

  explicit Residual(std::size_t n) : adj(n) {}

  std::pair<std::size_t, std::size_t> add(std::size_t u, std::size_t v,
                                          const T& cost,
                                          const std::optional<T>& cap) {
    const std::size_t iu = adj[u].size();
    const std::size_t iv = adj[v].size() + (u == v ? 1 : 0);
    adj[u].push_back({v, iv, cost, cap ? *cap : T(0), !cap.has_value()});
    adj[v].push_back({u, iu, -cost, T(0), false});
    return {u, iu};
  }

  bool open(const Edge& e) const { return e.infinite || e.cap > T(0); }

  std::vector<std::vector<Edge>> adj;
};

template <class T>
bool is_positive(const T& v, double floor) {
  if constexpr (is_exact_v<T>) {
    (void)floor;
    return v > T(0);
  } else {
    return v > floor;
  }
}

}  // namespace

template <class T>
FlowResult<T> min_cost_flow(const FlowNetwork<T>& net) {
  const std::size_t n = net.num_nodes();
  T balance(0);
  T scale(0);
  for (const auto& s : net.supply) {
    balance += s;
    scale += abs_value(s);
  }
  if constexpr (is_exact_v<T>) {
    require(balance == T(0), ErrorKind::kDomain, "supplies must sum to zero");
  } else {
    require(std::fabs(balance) <= 1e-12 * std::max(1.0, scale),
            ErrorKind::kDomain, "supplies must sum to zero");
  }
  for (const auto& a : net.arcs) {
    require(a.from < n && a.to < n, ErrorKind::kDomain, "arc endpoint out of range");
    require(!(a.cost < T(0)), ErrorKind::kDomain, "arc costs must be nonnegative");
    require(!a.capacity || !(*a.capacity < T(0)), ErrorKind::kDomain,
            "arc capacities must be nonnegative");
  }

  const std::size_t src = n;
  const std::size_t snk = n + 1;
  const std::size_t total = n + 2;
  Residual<T> res(total);
  std::vector<std::pair<std::size_t, std::size_t>> handle;
  handle.reserve(net.arcs.size());
  for (const auto& a : net.arcs) {
    handle.push_back(res.add(a.from, a.to, a.cost, a.capacity));
  }
  T remaining(0);
  for (std::size_t v = 0; v < n; ++v) {
    const T& s = net.supply[v];
    if (s > T(0)) {
      res.add(src, v, T(0), s);
      remaining += s;
    } else if (s < T(0)) {
      res.add(v, snk, T(0), T(-s));
    }
  }

  std::vector<T> pi(total, T(0));
  std::vector<T> dist(total);
  std::vector<char> reached(total);
  std::vector<char> done(total);
  std::vector<std::pair<std::size_t, std::size_t>> prev(total);
  FlowResult<T> out;
  out.feasible = true;

  const double floor = 1e-14 * std::max(1.0, lipext::to_double(scale));
  while (is_positive(remaining, floor)) {
    // Dense Dijkstra on reduced costs (networks here are small and dense).
    std::fill(reached.begin(), reached.end(), 0);
    std::fill(done.begin(), done.end(), 0);
    reached[src] = 1;
    dist[src] = T(0);
    for (;;) {
      long u = -1;
      for (std::size_t v = 0; v < total; ++v) {
        if (reached[v] && !done[v] &&
            (u < 0 || dist[v] < dist[static_cast<std::size_t>(u)])) {
          u = static_cast<long>(v);
        }
      }
      if (u < 0) break;
      const std::size_t x = static_cast<std::size_t>(u);
      done[x] = 1;
      for (std::size_t k = 0; k < res.adj[x].size(); ++k) {
        const auto& e = res.adj[x][k];
        if (!res.open(e) || done[e.to]) continue;
        T nd = dist[x] + e.cost + pi[x] - pi[e.to];
        if constexpr (!is_exact_v<T>) nd = std::max(nd, dist[x]);
        if (!reached[e.to] || nd < dist[e.to]) {
          reached[e.to] = 1;
          dist[e.to] = nd;
          prev[e.to] = {x, k};
        }
      }
    }
    if (!reached[snk]) {
      out.feasible = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (reached[v]) out.blocking_set.push_back(v);
      }
      break;
    }
    const T dt = dist[snk];
    for (std::size_t v = 0; v < total; ++v) {
      pi[v] += reached[v] && dist[v] < dt ? dist[v] : dt;
    }

    T push = remaining;
    for (std::size_t v = snk; v != src;) {
      const auto [u, k] = prev[v];
      const auto& e = res.adj[u][k];
      if (!e.infinite && e.cap < push) push = e.cap;
      v = u;
    }
    for (std::size_t v = snk; v != src;) {
      const auto [u, k] = prev[v];
      auto& e = res.adj[u][k];
      if (!e.infinite) e.cap -= push;
      res.adj[e.to][e.rev].cap += push;
      v = u;
    }
    remaining -= push;
  }

  out.flow.resize(net.arcs.size());
  out.cost = T(0);
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    const auto [u, k] = handle[a];
    const auto& e = res.adj[u][k];
    out.flow[a] = res.adj[e.to][e.rev].cap;
    out.cost += out.flow[a] * net.arcs[a].cost;
  }
  out.potential.assign(pi.begin(), pi.begin() + static_cast<long>(n));
  return out;
}

template <class T>
double flow_certificate_violation(const FlowNetwork<T>& net,
                                  const FlowResult<T>& res) {
  const std::size_t n = net.num_nodes();
  std::vector<T> net_out(n, T(0));
  double worst = 0.0;
  auto bump = [&](const T& v) {
    worst = std::max(worst, std::fabs(lipext::to_double(v)));
  };
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    const auto& arc = net.arcs[a];
    const T& f = res.flow[a];
    if (f < T(0)) bump(f);
    if (arc.capacity && f > *arc.capacity) bump(T(f - *arc.capacity));
    net_out[arc.from] += f;
    net_out[arc.to] -= f;
    const T reduced = arc.cost + res.potential[arc.from] - res.potential[arc.to];
    const bool forward_open = !arc.capacity || f < *arc.capacity;
    if (forward_open && reduced < T(0)) bump(reduced);
    if (f > T(0) && reduced > T(0)) {
      // Backward residual arc has reduced cost -reduced.
      if constexpr (is_exact_v<T>) {
        bump(reduced);
      } else if (f > 1e-12) {
        bump(reduced);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) bump(T(net_out[v] - net.supply[v]));
  return worst;
}

template struct FlowNetwork<double>;
template struct FlowNetwork<Rational>;
template FlowResult<double> min_cost_flow(const FlowNetwork<double>&);
template FlowResult<Rational> min_cost_flow(const FlowNetwork<Rational>&);
template double flow_certificate_violation(const FlowNetwork<double>&,
                                           const FlowResult<double>&);
template double flow_certificate_violation(const FlowNetwork<Rational>&,
                                           const FlowResult<Rational>&);

}  // namespace lipext::opt
