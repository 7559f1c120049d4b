#include <cmath>
#include <random>

#include "doctest.h"
#include "lipext/core/error.hpp"
#include "lipext/experiments/expander.hpp"
#include "lipext/experiments/holder.hpp"
#include "lipext/wasserstein/w1.hpp"

using namespace lipext::experiments;

TEST_CASE("expander bound formula") {
  CHECK(evaluate_expander_bound(1.0, 64, 4, 6.0, 16, 2.0) == doctest::Approx(0.125).epsilon(1e-12));
  // 16 r log d + log(phi |S| / 8) <= 0.
  CHECK(evaluate_expander_bound(0.01, 64, 4, 6.0, 1, 0.01) == 0.0);
  CHECK_THROWS_AS(evaluate_expander_bound(1.0, 64, 4, 6.0, 16, 7.0), lipext::Error);
  CHECK_THROWS_AS(evaluate_expander_bound(1.0, 64, 4, 6.0, 0, 1.0), lipext::Error);
  CHECK_THROWS_AS(evaluate_expander_bound(1.5, 64, 4, 6.0, 16, 1.0), lipext::Error);
}

TEST_CASE("expander instance construction") {
  const auto inst = build_expander_instance(16, 4, 7);
  CHECK(inst.s.indices.size() == 16);
  CHECK(inst.s_formula == 22);
  CHECK(inst.clamped);
  CHECK(inst.r == doctest::Approx(std::sqrt(std::log(16.0) / (4 * std::log(4.0)))));
  CHECK(inst.r == doctest::Approx(std::sqrt(0.5)));
  CHECK(inst.isometry_error <= 1e-12);
  for (const auto& v : inst.boundary) {
    double sum = 0;
    for (double x : v) sum += x;
    CHECK(std::fabs(sum) <= 1e-12);
  }
  // f is an isometry onto W1(S, d_{G_r(S)}).
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      std::vector<double> diff(16);
      for (std::size_t c = 0; c < 16; ++c) diff[c] = inst.boundary[i][c] - inst.boundary[j][c];
      CHECK(lipext::wasserstein::w1_norm_value(diff, inst.base) ==
            doctest::Approx(inst.magnified(i, j)).epsilon(1e-12));
    }
  }

  const auto small = build_expander_instance(8, 3, 1);
  CHECK(small.s.indices.size() <= 8);
  CHECK_THROWS_AS(build_expander_instance(9, 3, 0), lipext::Error);
  CHECK_THROWS_AS(build_expander_instance(8, 2, 0), lipext::Error);
}

TEST_CASE("expander experiment rows") {
  const auto rows = run_expander_experiment({16, 32}, 4, 7);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CHECK(r.status == "ok");
    CHECK(r.min_l >= 1.0 - 1e-12);
    CHECK(r.min_l_certified);
    CHECK(r.lp_gap <= 1e-8);
    CHECK(r.poincare_ok);
    CHECK(r.poincare_lhs <= r.poincare_rhs);
    CHECK(std::fabs(r.epsilon_discreteness - (2 * r.r + 1) / (2 * r.r + r.diam_s)) <= 1e-12);
    CHECK(r.epsilon_measured >= r.epsilon_discreteness - 1e-12);
    CHECK(r.ratio > 0.0);
    CHECK(r.phi_used <= 1.0);
  }
  const auto bad = run_expander_experiment({9}, 3, 0);
  CHECK(bad[0].status.rfind("error:parity", 0) == 0);
}

TEST_CASE("expander experiment with free vertices") {
  // n = 8, d = 3 keeps |S| < n for some seeds only if the formula is small;
  // force free vertices by building the LP on a hand-cut subset.
  auto inst = build_expander_instance(8, 3, 1);
  inst.s = lipext::metric::Subset::range(0, 4);
  inst.magnified = lipext::metric::magnify(inst.graph_metric, inst.s, inst.r);
  inst.base = lipext::metric::restrict_to(inst.magnified, inst.s);
  inst.boundary.assign(4, std::vector<double>(4, -0.25));
  for (std::size_t i = 0; i < 4; ++i) inst.boundary[i][i] += 1.0;
  const auto rep = evaluate_expander_instance(inst, lipext::opt::Backend::kAuto);
  CHECK(rep.min_l >= 1.0 - 1e-12);
  CHECK(rep.min_l_certified);
  CHECK(rep.poincare_ok);
}

TEST_CASE("reports are byte-deterministic") {
  auto render = [] {
    std::vector<Record> recs;
    for (const auto& r : run_expander_experiment({16, 32}, 4, 3)) recs.push_back(r.record());
    for (const auto& r : run_holder_experiment({2, 3}, {0.8, 1.0}, 5)) recs.push_back(r.record());
    Record meta;
    meta.add("log_base", std::string(kLogBase));
    return to_csv(recs) + to_json(recs, meta);
  };
  CHECK(render() == render());
}

TEST_CASE("holder parameters and bound") {
  const auto inst = build_holder_instance(4, 1.0);
  CHECK(inst.r == doctest::Approx(std::sqrt(2.0)));
  CHECK(inst.s == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(inst.cube.rs_condition);
  CHECK(evaluate_holder_bound(4, 1.0, inst.r, inst.s) ==
        doctest::Approx(2 / (3 * std::sqrt(2.0))));
  CHECK(evaluate_holder_bound(16, 1.0, 2.0, 0.5) == doctest::Approx(2.0 / 3.0));
  CHECK(evaluate_holder_bound(4, 1.0, 1.0, 1e12) < 1e-11);
  CHECK_THROWS_AS(evaluate_holder_bound(4, 1.0, 0.0, 1.0), lipext::Error);

  const auto i3 = build_holder_instance(3, 1.0);
  CHECK(i3.boundary_error <= 1e-12);
  const auto i2 = build_holder_instance(2, 0.75);
  CHECK(i2.r == doctest::Approx(std::pow(2.0, 1 / (4 * 0.5625))));
  CHECK(i2.s == doctest::Approx(std::pow(2.0, -0.5 / (4 * 0.5625))));
  CHECK(i2.cube.rs_condition);

  CHECK_THROWS_AS(build_holder_instance(3, 0.5), lipext::Error);
  CHECK_THROWS_AS(build_holder_instance(9, 1.0), lipext::Error);
}

TEST_CASE("Enflo inequality") {
  // Coordinate embedding: both sides equal n 2^n.
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::vector<double>> f(1u << n, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t x = 0; x < f.size(); ++x) {
      for (int b = 0; b < n; ++b) f[x][static_cast<std::size_t>(b)] = (x >> b) & 1u;
    }
    const auto rep = enflo_check(f, n);
    CHECK(rep.lhs == doctest::Approx(n * std::ldexp(1.0, n)));
    CHECK(rep.rhs == doctest::Approx(n * std::ldexp(1.0, n)));
    CHECK(rep.holds);
  }
  const auto zero = enflo_check(std::vector<std::vector<double>>(8, {1.0, 2.0}), 3);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.holds);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 6;
    const std::size_t k = 1 + t % 4;
    std::vector<std::vector<double>> f(1u << n, std::vector<double>(k));
    for (auto& row : f) {
      for (auto& v : row) v = g(rng);
    }
    CHECK(enflo_check(f, n).holds);
  }
  CHECK_THROWS_AS(enflo_check(std::vector<std::vector<double>>(3, {0.0}), 2), lipext::Error);
}

TEST_CASE("holder experiment rows") {
  const auto rows = run_holder_experiment({2, 3}, {0.6, 0.8, 1.0}, 0);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CAPTURE(r.alpha);
    CHECK(r.status == "ok");
    CHECK(r.rs_condition_ok);
    CHECK(r.metric_valid);
    CHECK(r.bound_ok);
    CHECK(r.enflo_ok);
    CHECK(r.min_l_upper >= r.exact_bound - 1e-3);
    CHECK(r.boundary_error <= 1e-12);
  }
  CHECK(rows[5].exact_bound == doctest::Approx(std::pow(3.0, 0.25) / 3));
  const auto big = run_holder_experiment({5}, {1.0}, 0);
  CHECK(big[0].status.rfind("error:capacity", 0) == 0);
}
