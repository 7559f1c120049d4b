#pragma once

#include <cstddef>
#include <cstdint>

#include "lipext/graphs/graph.hpp"

namespace lipext::graphs {

inline constexpr int kRegularSamplingBudget = 10000;

// Uniform simple connected d-regular graph on n vertices via the pairing
// (configuration) model; pairings with loops, multi-edges or more than one
// component are rejected and redrawn. Deterministic in `seed`; edges are
// returned sorted.
//
// Throws kParity (nd odd), kDomain (n < 3, d < 1 or d >= n) and kSampling
// when kRegularSamplingBudget pairings are all rejected.
Graph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed);

}  // namespace lipext::graphs
