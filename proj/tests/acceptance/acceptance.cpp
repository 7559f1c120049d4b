// Acceptance suite: one PASS/FAIL line per criterion, each with a wall-clock
// budget. Expected values come from brute-force or closed-form oracles in
// tests/support and in this file.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "lipext/core/error.hpp"
#include "lipext/core/format.hpp"
#include "lipext/experiments/expander.hpp"
#include "lipext/experiments/holder.hpp"
#include "lipext/ext/extension.hpp"
#include "lipext/graphs/averages.hpp"
#include "lipext/graphs/expansion.hpp"
#include "lipext/graphs/menger.hpp"
#include "lipext/graphs/random_regular.hpp"
#include "lipext/metric/constructions.hpp"
#include "lipext/metric/validate.hpp"
#include "lipext/opt/lp.hpp"
#include "lipext/wasserstein/w1.hpp"
#include "lipext/zext/zero_extension.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using lipext::Rational;
using lipext::format_double;
using lipext::graphs::Graph;
using lipext::graphs::WeightedGraph;
using lipext::metric::FiniteMetric;
using lipext::metric::Subset;
namespace opt = lipext::opt;
namespace w1 = lipext::wasserstein;
namespace ext = lipext::ext;
namespace ex = lipext::experiments;

namespace {

// Collects failed checks; the first few are shown on the FAIL line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (messages_.size() < 3) messages_.push_back(what);
    }
  }
  [[nodiscard]] bool ok() const { return failures_ == 0; }
  [[nodiscard]] std::size_t checks() const { return checks_; }
  [[nodiscard]] std::string failures() const {
    std::string s = std::to_string(failures_) + " failed";
    for (const auto& m : messages_) s += "; " + m;
    return s;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

std::string fmt(double v) { return format_double(v); }

// ---- generators -------------------------------------------------------------

Graph random_connected(std::mt19937_64& rng, std::size_t n, unsigned density = 3) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(rng() % i, i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j) && rng() % density == 0) g.add_edge(i, j);
    }
  }
  return g;
}

// Shortest-path metric of a random connected graph with integer weights 1..6.
FiniteMetric<double> random_metric(std::mt19937_64& rng, std::size_t n) {
  Graph g(n);
  std::uniform_int_distribution<int> w(1, 6);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(rng() % i, i, w(rng));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j) && rng() % 2) g.add_edge(i, j, w(rng));
    }
  }
  return lipext::metric::shortest_path_metric(g);
}

// Dyadic values (exact in both arithmetics) summing to zero.
std::vector<double> random_zero_sum(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> f(n);
  double sum = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    f[i] = std::ldexp(std::round(std::ldexp(u(rng), 10)), -10);
    sum += f[i];
  }
  f[n - 1] = -sum;
  return f;
}

std::vector<Rational> to_rational(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

WeightedGraph<Rational> to_rational(const Graph& g) {
  WeightedGraph<Rational> q(g.num_vertices());
  for (const auto& e : g.edges()) q.add_edge(e.u, e.v, Rational(e.weight));
  return q;
}

std::vector<std::pair<std::size_t, std::size_t>> edge_pairs(const Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (const auto& ed : g.edges()) e.emplace_back(ed.u, ed.v);
  return e;
}

// ---- oracles ----------------------------------------------------------------

// min sum d(i,j) pi(i,j) over couplings of f+ and f-, as one dense LP.
template <class T>
T coupling_lp(const std::vector<T>& f, const FiniteMetric<T>& d) {
  const std::size_t n = f.size();
  opt::LinearProgram<T> lp;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.add_variable(d(i, j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, T>> row, col;
    for (std::size_t j = 0; j < n; ++j) {
      row.emplace_back(i * n + j, T(1));
      col.emplace_back(j * n + i, T(1));
    }
    lp.add_row(row, opt::RowSense::kEq, f[i] > 0 ? f[i] : T(0));
    lp.add_row(col, opt::RowSense::kEq, f[i] < 0 ? T(-f[i]) : T(0));
  }
  const auto sol = opt::solve_lp(lp);
  lipext::require(sol.status == opt::LpStatus::kOptimal, lipext::ErrorKind::kInvariant,
                  "coupling oracle LP not optimal");
  return sol.objective;
}

// Exact edge expansion by scanning every proper vertex set.
Rational expansion_rational(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  Rational best(-1);
  for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
    std::size_t k = 0;
    for (std::size_t v = 0; v < n; ++v) k += (mask >> v) & 1u;
    std::size_t cut = 0;
    for (const auto& e : g.edges()) cut += ((mask >> e.u) & 1u) != ((mask >> e.v) & 1u);
    const Rational r(static_cast<long>(cut * n * n), static_cast<long>(k * (n - k) * m));
    if (best < 0 || r < best) best = r;
  }
  return best;
}

// Sides of Enflo's inequality: diagonals on the left, edges on the right.
std::pair<double, double> enflo_sides(const std::vector<std::vector<double>>& f, int n) {
  const std::size_t full = (std::size_t{1} << n) - 1;
  const auto sq = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
  };
  double lhs = 0;
  double rhs = 0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    lhs += sq(f[x], f[x ^ full]);
    for (int j = 0; j < n; ++j) rhs += sq(f[x], f[x ^ (std::size_t{1} << j)]);
  }
  return {lhs, rhs};
}

// ||F||_{Lip(alpha)} over unordered pairs for a norm given as a callback.
double lip_constant(const std::vector<std::vector<double>>& v, const FiniteMetric<double>& d,
                    const std::vector<std::size_t>& idx, double alpha,
                    const std::function<double(const std::vector<double>&)>& norm) {
  double best = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      std::vector<double> diff(v[a].size());
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = v[a][c] - v[b][c];
      best = std::max(best, norm(diff) / std::pow(d(idx[a], idx[b]), alpha));
    }
  }
  return best;
}

// ---- criteria ---------------------------------------------------------------

struct Result {
  bool pass = false;
  std::string detail;
};

Result finish(const Checker& c, const std::string& detail) {
  return {c.ok(), c.ok() ? detail : c.failures()};
}

Result w1_duality() {
  Checker c;
  std::mt19937_64 rng(2024);
  double max_gap = 0;
  std::size_t oracle_checks = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 7;  // |X| <= 8
    const auto d = random_metric(rng, n);
    const auto f = random_zero_sum(rng, n);
    const auto res = w1::w1_norm(w1::SignedMeasure<double>{f}, d);
    double sfg = 0;
    for (std::size_t i = 0; i < n; ++i) sfg += f[i] * res.potential.g[i];
    const double gap = std::fabs(res.value - sfg);
    max_gap = std::max({max_gap, gap, res.duality_gap});
    c.expect(gap <= 1e-9 && res.duality_gap <= 1e-9, "float gap " + fmt(gap));
    c.expect(w1::lipschitz_excess(res.potential, d) <= 1e-9, "potential not 1-Lipschitz");

    const auto dq = lipext::metric::to_rational(d);
    const auto fq = to_rational(f);
    const auto exact = w1::w1_norm(w1::SignedMeasure<Rational>{fq}, dq);
    Rational sfgq = 0;
    for (std::size_t i = 0; i < n; ++i) sfgq += fq[i] * exact.potential.g[i];
    c.expect(sfgq == exact.value, "rational duality gap nonzero");
    c.expect(w1::lipschitz_excess(exact.potential, dq) <= 0.0, "rational potential not 1-Lipschitz");

    if (n <= 6) {
      ++oracle_checks;
      const double primal = coupling_lp(f, d);
      c.expect(std::fabs(primal - res.value) <= 1e-9 * (1 + primal),
               "coupling LP " + fmt(primal) + " vs " + fmt(res.value));
      c.expect(coupling_lp(fq, dq) == exact.value, "rational coupling LP mismatch");
    }
  }
  return finish(c, "200 measures, max float gap " + fmt(max_gap) + ", rational gap 0, " +
                       std::to_string(oracle_checks) + " coupling-LP agreements");
}

Result dirac_and_sandwich() {
  Checker c;
  std::mt19937_64 rng(77);
  std::size_t pairs = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto d = lipext::metric::to_rational(random_metric(rng, n));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        ++pairs;
        const auto e = w1::SignedMeasure<Rational>::dirac_difference(n, x, y);
        c.expect(w1::w1_norm_value(e.values, d) == d(x, y), "||e_x - e_y|| != d(x,y)");
      }
    }
  }
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto d = random_metric(rng, n);
    const auto f = random_zero_sum(rng, n);
    const auto rep = w1::w1_sandwich_check(w1::SignedMeasure<double>{f}, d);
    // Independent bounds from the matrix itself.
    double l1 = 0, dmin = INFINITY, diam = 0;
    for (double v : f) l1 += std::fabs(v);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        dmin = std::min(dmin, d(i, k));
        diam = std::max(diam, d(i, k));
      }
    }
    const double norm = coupling_lp(f, d);
    c.expect(rep.holds, "sandwich report fails");
    c.expect(dmin * l1 / 2 <= norm + 1e-12 && norm <= diam * l1 / 2 + 1e-12, "sandwich oracle fails");
  }
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 4 + t % 4;
    const auto x = random_metric(rng, n);
    const Subset s{{0, 1, n - 1}};
    const double r = 0.25 * (1 + t % 8);
    const auto f = random_zero_sum(rng, 3);
    const auto rep = w1::w1_sandwich_check_magnified(w1::SignedMeasure<double>{f}, x, s, r);
    const auto base = lipext::metric::restrict_to(lipext::metric::magnify(x, s, r), s);
    double l1 = 0;
    for (double v : f) l1 += std::fabs(v);
    const double norm = coupling_lp(f, base);
    c.expect(rep.holds, "magnified sandwich report fails");
    c.expect(r * l1 <= norm + 1e-12 && norm <= (r + lipext::metric::diameter(x) / 2) * l1 + 1e-12,
             "magnified r-form bounds fail");
  }
  return finish(c, std::to_string(pairs) + " Dirac pairs exact, 200 sandwich checks (50 magnified)");
}

lipext::zext::ZeroExtensionInstance<Rational> random_zext(std::mt19937_64& rng) {
  const std::size_t n = 2 + rng() % 6;                            // |V| <= 7
  const std::size_t m = 1 + rng() % std::min<std::size_t>(3, n);  // |T| <= 3
  lipext::zext::ZeroExtensionInstance<Rational> inst;
  inst.graph = WeightedGraph<Rational>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() % 2) {
        inst.graph.add_edge(i, j, Rational(static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3)));
      }
    }
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  inst.terminals = Subset{{perm.begin(), perm.begin() + static_cast<long>(m)}};
  WeightedGraph<Rational> tg(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      tg.add_edge(i, j, Rational(1 + static_cast<long>(rng() % 6), 1 + static_cast<long>(rng() % 2)));
    }
  }
  inst.d_t = m == 1 ? FiniteMetric<Rational>::from_rows({{Rational(0)}})
                    : lipext::metric::shortest_path_metric(tg);
  return inst;
}

// OPT by recursive enumeration with from-scratch costs.
Rational opt_oracle(const lipext::zext::ZeroExtensionInstance<Rational>& inst) {
  const std::size_t n = inst.graph.num_vertices();
  const std::size_t m = inst.terminals.size();
  std::vector<long> fixed(n, -1);
  for (std::size_t i = 0; i < m; ++i) fixed[inst.terminals.indices[i]] = static_cast<long>(i);
  std::vector<std::size_t> a(n);
  Rational best(-1);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      Rational cost = 0;
      for (const auto& e : inst.graph.edges()) cost += e.weight * inst.d_t(a[e.u], a[e.v]);
      if (best < 0 || cost < best) best = cost;
      return;
    }
    if (fixed[v] >= 0) {
      a[v] = static_cast<std::size_t>(fixed[v]);
      rec(v + 1);
      return;
    }
    for (std::size_t t = 0; t < m; ++t) {
      a[v] = t;
      rec(v + 1);
    }
  };
  rec(0);
  return best;
}

Result relaxation_chain() {
  Checker c;
  std::mt19937_64 rng(5);
  std::size_t strict = 0;
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_zext(rng);
    const auto r = lipext::zext::relaxation_chain_check(inst, opt::Backend::kExact);
    c.expect(r.arithmetic == lipext::Arithmetic::kExact, "chain not exact");
    c.expect(r.met <= r.emd && r.emd <= r.opt, "MET <= EMD <= OPT violated");
    c.expect(r.opt == opt_oracle(inst), "OPT differs from enumeration");
    strict += r.met < r.emd;
  }
  lipext::zext::ZeroExtensionInstance<Rational> star;
  star.graph = WeightedGraph<Rational>(4);
  for (std::size_t leaf = 1; leaf <= 3; ++leaf) star.graph.add_edge(0, leaf);
  star.terminals = Subset{{1, 2, 3}};
  star.d_t = FiniteMetric<Rational>::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto s = lipext::zext::relaxation_chain_check(star, opt::Backend::kExact);
  c.expect(s.met == Rational(3, 2) && s.emd == Rational(2) && s.opt == Rational(2),
           "star returned (" + lipext::to_string(s.met) + ", " + lipext::to_string(s.emd) + ", " +
               lipext::to_string(s.opt) + ")");
  c.expect(s.met < s.emd, "star MET not strictly below EMD");
  return finish(c, "50 random chains exact (" + std::to_string(strict) +
                       " with MET < EMD), star = (3/2, 2, 2)");
}

Result expander_toolbox() {
  Checker c;
  std::mt19937_64 rng(41);
  std::size_t exact_graphs = 0;
  std::vector<Graph> small;
  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::size_t d = 2; d < std::min<std::size_t>(n, 5); ++d) {
      if ((n * d) % 2) continue;
      for (std::uint64_t seed = 0; seed < 3; ++seed) small.push_back(lipext::graphs::random_regular_graph(n, d, seed));
    }
  }
  for (int t = 0; t < 40; ++t) small.push_back(random_connected(rng, 2 + t % 7));
  for (const auto& g : small) {
    ++exact_graphs;
    const auto rep = lipext::graphs::edge_expansion_exact(g);
    c.expect(rep.phi_exact && *rep.phi_exact == expansion_rational(g), "exact expansion mismatch");
    c.expect(std::fabs(rep.phi - oracle::expansion_bitmask(g.num_vertices(), edge_pairs(g))) <= 1e-12,
             "expansion double mismatch");
  }
  for (int t = 0; t < 50; ++t) {
    const auto g = random_connected(rng, 3 + t % 8);
    const double lower = lipext::graphs::edge_expansion_spectral_bound(g).phi;
    c.expect(lower <= oracle::expansion_bitmask(g.num_vertices(), edge_pairs(g)), "spectral bound above exact");
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 4 + t % 7;
    const auto g = random_connected(rng, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t ka = 1 + rng() % (n / 2);
    const std::size_t kb = 1 + rng() % (n - ka);
    const Subset a{{perm.begin(), perm.begin() + static_cast<long>(ka)}};
    const Subset b{{perm.begin() + static_cast<long>(ka), perm.begin() + static_cast<long>(ka + kb)}};
    const auto paths = lipext::graphs::edge_disjoint_paths(g, a, b);
    c.expect(paths.count == oracle::min_ab_cut(n, edge_pairs(g), a.indices, b.indices), "Menger count != min cut");
    const Rational phi = expansion_rational(g);
    const Rational guarantee = phi * static_cast<long>(std::min(ka, kb) * g.num_edges()) / static_cast<long>(2 * n);
    // count >= ceil(guarantee)  <=>  count >= guarantee for an integer count.
    c.expect(Rational(static_cast<long>(paths.count)) >= guarantee, "Menger bound violated");
  }
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + t % 8;
    const auto g = random_connected(rng, n);
    const Rational phi = expansion_rational(g);
    const std::size_t k = 1 + t % 5;
    std::vector<std::vector<Rational>> h(n, std::vector<Rational>(k));
    for (auto& row : h) {
      for (auto& v : row) v = Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
    }
    const auto sides = lipext::graphs::l1_poincare_sides(to_rational(g), h);
    c.expect(phi * sides.lhs <= sides.rhs, "l1 Poincare violated");
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 10 + 2 * (seed % 4);
    const auto g = to_rational(lipext::graphs::random_regular_graph(n, 3, seed));
    Subset s;
    for (std::size_t v = 0; v < n; ++v) {
      if ((v * 7 + seed) % 3 == 0) s.indices.push_back(v);
    }
    const Rational r(static_cast<long>(1 + seed), 3);
    Rational touched = 0;
    const auto mask = s.mask(n);
    for (const auto& e : g.edges()) touched += static_cast<long>(mask[e.u] + mask[e.v]);
    const Rational expected = 1 + r * touched / static_cast<long>(g.num_edges());
    const Rational got = lipext::graphs::magnified_edge_average(g, s, r);
    c.expect(got == expected, "magnified edge average mismatch");
    c.expect(got == 1 + 2 * r * static_cast<long>(s.size()) / static_cast<long>(n), "closed form mismatch");
  }
  return finish(c, std::to_string(exact_graphs) + " exact expansions, 50 spectral, 100 Menger, "
                                                  "60 l1-Poincare, 10 edge averages exact");
}

Result expander_experiment() {
  Checker c;
  const std::uint64_t seed = 7;
  const auto rows = ex::run_expander_experiment({16, 32}, 4, seed);
  c.expect(rows.size() == 2, "expected two rows");
  std::string detail;
  for (const auto& row : rows) {
    const std::string tag = "n=" + std::to_string(row.n) + ": ";
    c.expect(row.status == "ok", tag + row.status);
    if (row.status != "ok") continue;
    const auto inst = ex::build_expander_instance(row.n, 4, seed);
    // Boundary differences are Dirac differences, whose W1 norm is d(x,y).
    double iso = 0;
    const std::size_t k = inst.s.size();
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        for (std::size_t z = 0; z < k; ++z) {
          const double want = (z == x) - (z == y);
          iso = std::max(iso, std::fabs(inst.boundary[x][z] - inst.boundary[y][z] - want));
        }
      }
    }
    c.expect(iso <= 1e-12, tag + "boundary differences are not Dirac differences");
    c.expect(lipext::metric::validate_metric(inst.base).ok, tag + "base is not a metric");
    c.expect(row.isometry_error <= 1e-9, tag + "isometry error " + fmt(row.isometry_error));
    c.expect(row.min_l_certified && row.lp_gap <= 1e-8, tag + "LP gap " + fmt(row.lp_gap));
    c.expect(row.min_l >= 1.0, tag + "minL " + fmt(row.min_l));
    c.expect(row.poincare_ok && row.poincare_lhs <= row.poincare_rhs, tag + "Poincare fails");

    const double r = std::sqrt(std::log(static_cast<double>(row.n)) / (4 * std::log(4.0)));
    const auto dist = oracle::bfs_all_pairs(inst.graph.adjacency());
    int diam_s = 0;
    for (auto x : inst.s.indices) {
      for (auto y : inst.s.indices) diam_s = std::max(diam_s, dist[x][y]);
    }
    const double eps = (2 * r + 1) / (2 * r + diam_s);
    c.expect(std::fabs(row.r - r) <= 1e-12, tag + "r mismatch");
    c.expect(std::fabs(row.epsilon_discreteness - eps) <= 1e-12,
             tag + "epsilon " + fmt(row.epsilon_discreteness) + " vs " + fmt(eps));
    detail += tag + "minL " + fmt(row.min_l) + ", gap " + fmt(row.lp_gap) + ", eps " +
              fmt(row.epsilon_discreteness) + "; ";
  }
  return finish(c, detail);
}

Result twisted_cube() {
  Checker c;
  std::size_t triples = 0;
  for (int n = 1; n <= 5; ++n) {
    for (double alpha : {0.6, 0.75, 0.9, 1.0}) {
      const double a2 = 4 * alpha * alpha;
      const double r = std::pow(n, 1 / a2);
      const double s = std::pow(n, -(2 * alpha - 1) / a2);
      const std::string tag = "n=" + std::to_string(n) + " alpha=" + fmt(alpha) + ": ";
      c.expect(lipext::metric::check_rs_condition(alpha, r, s), tag + "rs-condition fails");
      const auto cube = lipext::metric::twisted_cube_metric(n, alpha, r, s);
      c.expect(cube.rs_condition, tag + "cube reports rs failure");
      c.expect(lipext::metric::validate_metric(cube.metric).ok, tag + "validator rejects");
      const auto& m = cube.metric;
      const std::size_t p = m.size();
      bool tri = true;
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
          tri = tri && m(i, j) == m(j, i) && (i == j) == (m(i, j) == 0);
          for (std::size_t k = 0; k < p; ++k) tri = tri && m(i, j) <= m(i, k) + m(k, j) + 1e-12;
          triples += p;
        }
      }
      c.expect(tri, tag + "triangle scan fails");
    }
  }
  return finish(c, "20 cubes, rs-condition holds, " + std::to_string(triples) + " triples checked");
}

Result holder_experiment() {
  Checker c;
  const int n = 3;
  const auto rows = ex::run_holder_experiment({n}, {0.8, 1.0}, 0);
  c.expect(rows.size() == 2, "expected two rows");
  std::string detail;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (const auto& row : rows) {
    const std::string tag = "alpha=" + fmt(row.alpha) + ": ";
    c.expect(row.status == "ok", tag + row.status);
    if (row.status != "ok") continue;
    const auto inst = ex::build_holder_instance(n, row.alpha);
    double err = 0;
    const std::size_t cube = std::size_t{1} << n;
    for (std::size_t x = 0; x < cube; ++x) {
      for (std::size_t y = 0; y < cube; ++y) {
        double sq = 0;
        for (int b = 0; b < n; ++b) {
          const double dx = static_cast<double>((x >> b) & 1u) - static_cast<double>((y >> b) & 1u);
          sq += dx * dx;
          c.expect(inst.boundary[x][static_cast<std::size_t>(b)] == static_cast<double>((x >> b) & 1u),
                   tag + "boundary is not the identity embedding");
        }
        err = std::max(err, std::fabs(std::sqrt(sq) - std::pow(inst.cube.metric(x, y), row.alpha)));
      }
    }
    c.expect(err <= 1e-12, tag + "boundary error " + fmt(err));
    c.expect(row.enflo_ok && row.enflo_lhs <= row.enflo_rhs + 1e-12, tag + "Enflo fails on the witness");

    const double a = row.alpha;
    const double r = std::pow(n, 1 / (4 * a * a));
    const double s = std::pow(n, -(2 * a - 1) / (4 * a * a));
    const double bound = std::sqrt(n) / (std::pow(s, a) * std::sqrt(n) + 2 * std::pow(r, a));
    c.expect(std::fabs(row.exact_bound - bound) <= 1e-12, tag + "bound mismatch");
    if (a == 1.0) c.expect(std::fabs(bound - std::pow(3.0, 0.25) / 3) <= 1e-12, "closed form at alpha = 1");
    c.expect(row.min_l_upper >= bound - 1e-3, tag + "minL_upper " + fmt(row.min_l_upper) + " < bound");
    detail += tag + "minL_upper " + fmt(row.min_l_upper) + " >= " + fmt(bound) + "; ";
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + t % 4;
    std::vector<std::vector<double>> f(std::size_t{1} << n, std::vector<double>(k));
    for (auto& v : f) {
      for (auto& x : v) x = gauss(rng);
    }
    const auto [lhs, rhs] = enflo_sides(f, n);
    const auto rep = ex::enflo_check(f, n);
    c.expect(lhs <= rhs, "Enflo oracle fails on a random map");
    c.expect(rep.holds && std::fabs(rep.lhs - lhs) <= 1e-9 * (1 + lhs), "Enflo report disagrees");
  }
  return finish(c, detail + "Enflo on 100 random maps");
}

Result extension_checks() {
  Checker c;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + t % 6;
    ext::ExtensionProblem p;
    p.ambient = random_metric(rng, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t ks = 2 + rng() % (n - 1);
    p.subset = Subset{{perm.begin(), perm.begin() + static_cast<long>(ks)}};
    p.alpha = t % 2 ? 1.0 : 0.5 + 0.1 * (t % 5);
    p.target = ext::TargetSpace::real();
    for (std::size_t i = 0; i < ks; ++i) p.boundary.push_back({u(rng)});
    const double lip = lip_constant(p.boundary, p.ambient, p.subset.indices, p.alpha,
                                    [](const std::vector<double>& v) { return std::fabs(v[0]); });
    const auto lp = ext::min_extension_polyhedral(p);
    const auto mc = ext::mcshane_extension(p);
    worst = std::max({worst, std::fabs(lp.constant - lip), std::fabs(mc.constant - lip)});
    c.expect(std::fabs(lp.constant - lip) <= 1e-9 && std::fabs(mc.constant - lip) <= 1e-9,
             "real-line LP " + fmt(lp.constant) + " vs McShane " + fmt(lip));
  }

  // Equilateral triangle of side 2 around a free point at distance 1.
  ext::ExtensionProblem cheb;
  cheb.ambient = FiniteMetric<double>::from_rows({{0, 2, 2, 1}, {2, 0, 2, 1}, {2, 2, 0, 1}, {1, 1, 1, 0}});
  cheb.subset = Subset{{0, 1, 2}};
  cheb.target = ext::TargetSpace::euclidean(2);
  cheb.boundary = {{1.0, 0.0}, {-0.5, std::sqrt(3.0) / 2}, {-0.5, -std::sqrt(3.0) / 2}};
  for (auto& v : cheb.boundary) {
    for (auto& x : v) x *= 2 / std::sqrt(3.0);
  }
  const auto cs = ext::min_extension_euclidean(cheb);
  c.expect(std::fabs(cs.constant - 2 / std::sqrt(3.0)) <= 1e-3, "Chebyshev center " + fmt(cs.constant));

  const auto base = FiniteMetric<double>::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  const std::vector<ext::TargetSpace> targets{ext::TargetSpace::real(), ext::TargetSpace::l1(2),
                                              ext::TargetSpace::linf(3), ext::TargetSpace::euclidean(2),
                                              ext::TargetSpace::wasserstein(base)};
  for (int t = 0; t < 10; ++t) {
    for (const auto& target : targets) {
      const std::size_t n = 3 + t % 4;
      ext::ExtensionProblem p;
      p.ambient = random_metric(rng, n);
      p.subset = Subset::all(n);
      p.alpha = t % 2 ? 1.0 : 0.75;
      p.target = target;
      const std::size_t dim = target.kind == ext::TargetKind::kW1 ? 3 : target.dim;
      for (std::size_t i = 0; i < n; ++i) {
        if (target.kind == ext::TargetKind::kW1) {
          p.boundary.push_back(random_zero_sum(rng, dim));
        } else {
          std::vector<double> v(dim);
          for (auto& x : v) x = u(rng);
          p.boundary.push_back(v);
        }
      }
      const auto norm = [&](const std::vector<double>& v) {
        double s = 0;
        switch (target.kind) {
          case ext::TargetKind::kReal:
          case ext::TargetKind::kL1:
            for (double x : v) s += std::fabs(x);
            return s;
          case ext::TargetKind::kLinf:
            for (double x : v) s = std::max(s, std::fabs(x));
            return s;
          case ext::TargetKind::kL2:
            for (double x : v) s += x * x;
            return std::sqrt(s);
          case ext::TargetKind::kW1:
            return coupling_lp(v, base);
        }
        return s;
      };
      const double lip = lip_constant(p.boundary, p.ambient, p.subset.indices, p.alpha, norm);
      const auto sol = target.kind == ext::TargetKind::kL2 ? ext::min_extension_euclidean(p)
                                                           : ext::min_extension_polyhedral(p);
      c.expect(std::fabs(sol.constant - lip) <= 1e-9 * (1 + lip),
               std::string(ext::to_string(target.kind)) + " S = X: " + fmt(sol.constant) + " vs " + fmt(lip));
    }
  }
  return finish(c, "100 real-line instances (max deviation " + fmt(worst) + "), Chebyshev " +
                       fmt(cs.constant) + ", S = X on 5 targets");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Result determinism() {
  Checker c;
  const auto dir = fs::temp_directory_path() / "lipext_acceptance";
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"expander", "--n", "16,32", "--d", "4", "--seed", "7"},
      {"holder", "--n", "2,3", "--alpha", "0.6,0.8,1.0"},
  };
  std::size_t files = 0;
  for (const auto& base : commands) {
    for (const std::string format : {"csv", "json"}) {
      std::vector<std::string> outputs;
      for (int run = 0; run < 2; ++run) {
        const auto path = dir / (base[0] + "_" + std::to_string(run) + "." + format);
        auto args = base;
        args.insert(args.end(), {"--format", format, "--out", path.string()});
        std::ostringstream out, err;
        const int code = lipext::cli::dispatch(args, out, err);
        c.expect(code == 0, base[0] + " exited with " + std::to_string(code) + ": " + err.str());
        outputs.push_back(slurp(path));
      }
      // A replay of the first manifest must match as well.
      const auto replayed = dir / (base[0] + "_replay." + format);
      std::ostringstream out, err;
      lipext::cli::dispatch({"replay", (dir / (base[0] + "_0." + format)).string() + ".manifest.json",
                             "--out", replayed.string()},
                            out, err);
      outputs.push_back(slurp(replayed));
      files += outputs.size();
      c.expect(!outputs[0].empty(), base[0] + " " + format + " report is empty");
      c.expect(outputs[0] == outputs[1] && outputs[0] == outputs[2],
               base[0] + " " + format + " reports differ");
    }
  }
  return finish(c, std::to_string(files) + " reports byte-identical across runs and replays");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "W1 duality", 60, w1_duality},
      {2, "Dirac and sandwich identities", 30, dirac_and_sandwich},
      {3, "relaxation chain", 300, relaxation_chain},
      {4, "expander toolbox", 120, expander_toolbox},
      {5, "expander experiment", 600, expander_experiment},
      {6, "twisted-cube metric", 180, twisted_cube},
      {7, "Holder experiment", 300, holder_experiment},
      {8, "extension-solver cross-checks", 120, extension_checks},
      {9, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = cr.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= cr.budget_seconds;
    const bool pass = r.pass && in_time;
    failed += !pass;
    std::ostringstream timing;
    timing.precision(2);
    timing << std::fixed << secs << " s / " << cr.budget_seconds << " s";
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << cr.id << " (" << cr.name << "): "
              << r.detail << (in_time ? "" : " [over budget]") << " [" << timing.str() << "]\n"
              << std::flush;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criterion(s) failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
