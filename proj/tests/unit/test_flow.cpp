#include <random>

#include "doctest.h"
#include "lipext/core/error.hpp"
#include "lipext/opt/lp.hpp"
#include "lipext/opt/min_cost_flow.hpp"

using lipext::Rational;
using namespace lipext::opt;

namespace {

// Same transportation problem as an LP over arc flows.
template <class T>
LinearProgram<T> as_lp(const FlowNetwork<T>& net) {
  LinearProgram<T> lp;
  for (const auto& a : net.arcs) lp.add_variable(a.cost, T(0), a.capacity);
  for (std::size_t v = 0; v < net.num_nodes(); ++v) {
    std::vector<std::pair<std::size_t, T>> row;
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
      if (net.arcs[k].from == v) row.emplace_back(k, T(1));
      if (net.arcs[k].to == v) row.emplace_back(k, T(-1));
    }
    lp.add_row(row, RowSense::kEq, net.supply[v]);
  }
  return lp;
}

template <class T>
FlowNetwork<T> random_transport(std::mt19937_64& rng, std::size_t ns,
                                std::size_t nt, bool capacities) {
  FlowNetwork<T> net;
  net.supply.assign(ns + nt, T(0));
  std::uniform_int_distribution<int> mass(1, 9), cost(0, 20);
  int total = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    const int m = mass(rng);
    net.supply[i] = T(m);
    total += m;
  }
  for (std::size_t j = 0; j + 1 < nt; ++j) {
    const int m = std::min(total, mass(rng));
    net.supply[ns + j] = T(-m);
    total -= m;
  }
  net.supply[ns + nt - 1] = T(-total);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      std::optional<T> cap;
      if (capacities && rng() % 2 == 0) cap = T(20);
      net.add_arc(i, ns + j, T(cost(rng)) / T(4), cap);
    }
  }
  return net;
}

}  // namespace

TEST_CASE("trivial networks") {
  FlowNetwork<double> one;
  one.supply = {1.0, -1.0};
  one.add_arc(0, 1, 5.0);
  const auto r = min_cost_flow(one);
  CHECK(r.feasible);
  CHECK(r.cost == 5.0);
  CHECK(flow_certificate_violation(one, r) == 0.0);

  FlowNetwork<double> zero;
  zero.supply = {0.0, 0.0, 0.0};
  zero.add_arc(0, 1, 1.0);
  const auto z = min_cost_flow(zero);
  CHECK(z.feasible);
  CHECK(z.cost == 0.0);
  CHECK(z.flow == std::vector<double>{0.0});
}

TEST_CASE("infeasible supplies produce a blocking set") {
  FlowNetwork<double> net;
  net.supply = {2.0, 0.0, -2.0};
  net.add_arc(0, 1, 1.0, 1.0);
  net.add_arc(1, 2, 1.0);
  const auto r = min_cost_flow(net);
  CHECK_FALSE(r.feasible);
  CHECK(std::find(r.blocking_set.begin(), r.blocking_set.end(), 0u) !=
        r.blocking_set.end());

  FlowNetwork<double> cut;
  cut.supply = {1.0, -1.0};
  CHECK_FALSE(min_cost_flow(cut).feasible);
}

TEST_CASE("malformed networks throw") {
  FlowNetwork<double> net;
  net.supply = {1.0, 0.0};
  CHECK_THROWS_AS(min_cost_flow(net), lipext::Error);
  net.supply = {1.0, -1.0};
  net.add_arc(0, 1, -1.0);
  CHECK_THROWS_AS(min_cost_flow(net), lipext::Error);
  FlowNetwork<double> bad;
  bad.supply = {0.0};
  bad.add_arc(0, 3, 1.0);
  CHECK_THROWS_AS(min_cost_flow(bad), lipext::Error);
}

TEST_CASE("transshipment through intermediate nodes") {
  FlowNetwork<Rational> net;
  net.supply = {Rational(3), Rational(0), Rational(-3)};
  net.add_arc(0, 2, Rational(10));
  net.add_arc(0, 1, Rational(1), Rational(2));
  net.add_arc(1, 2, Rational(1, 2));
  const auto r = min_cost_flow(net);
  CHECK(r.feasible);
  CHECK(r.cost == Rational(13));
  CHECK(flow_certificate_violation(net, r) == 0.0);
}

TEST_CASE("min_cost_flow equals the LP on 200 random transportation instances") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const std::size_t ns = 1 + rng() % 8, nt = 1 + rng() % 8;
    const bool caps = t % 4 == 0;
    const auto net = random_transport<double>(rng, ns, nt, caps);
    const auto flow = min_cost_flow(net);
    const auto lp = solve_lp(as_lp(net));
    REQUIRE(flow.feasible == (lp.status == LpStatus::kOptimal));
    if (!flow.feasible) continue;
    CHECK(std::fabs(flow.cost - lp.objective) <= 1e-9 * (1 + std::fabs(lp.objective)));
    CHECK(flow_certificate_violation(net, flow) <= 1e-9);
  }
}

TEST_CASE("rational min_cost_flow is exact against the rational LP") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    const auto net = random_transport<Rational>(rng, 1 + rng() % 5, 1 + rng() % 5, t % 3 == 0);
    const auto flow = min_cost_flow(net);
    const auto lp = solve_lp(as_lp(net));
    REQUIRE(flow.feasible == (lp.status == LpStatus::kOptimal));
    if (!flow.feasible) continue;
    CHECK(flow.cost == lp.objective);
    CHECK(flow_certificate_violation(net, flow) == 0.0);
  }
}
