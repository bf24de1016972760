#pragma once

#include <cstdint>

#include "vsparse/graph.hpp"

namespace vsp {

// Seeded instance families. Unless stated otherwise terminals are degree-1
// pendants numbered after the interior vertices.

// Connected random unit multigraph on n interior vertices with about m
// interior edges; each terminal gets 1..max_term_deg edges into the interior.
CapGraph gen_random_unit(int n, int m, int k, int max_term_deg, std::uint64_t seed);

// Same shape with capacities drawn from {1, 3/2, 2, ..., 4}.
CapGraph gen_random_capacitated(int n, int m, int k, int max_term_deg, std::uint64_t seed);

// Two cliques of `side` vertices joined by one bridge; terminals split
// between the cliques.
CapGraph gen_dumbbell(int k, int side, std::uint64_t seed);

// rows x cols grid, terminals attached to border vertices.
CapGraph gen_grid(int rows, int cols, int k, std::uint64_t seed);

// Random d-regular multigraph (configuration model, loops re-drawn).
CapGraph gen_regular(int n, int d, int k, std::uint64_t seed);

// `layers` layers of k vertices, consecutive layers complete bipartite,
// terminal i pendant on vertex i of layer 0.
CapGraph gen_welllinked(int k, int layers, std::uint64_t seed);

}  // namespace vsp
