#pragma once

#include <vector>

#include "vsparse/graph.hpp"
#include "vsparse/well_linked.hpp"

namespace vsp {

struct CutBuildOptions {
  SparsestCutOptions cut;
};

struct CutSparsifier {
  CapGraph h;
  ContractionMap map;  // input vertex ids -> H
  Q claimed_q = 3;
  Q eps_input = 1;     // 1 in unit mode
  Q eps_internal = 1;  // eps_input / 3 in capacitated mode
  Q cap_limit = 0;     // C of the input
  CapGraph unit_graph; // the integral graph the contraction ran on
  std::vector<Decomposition> decompositions;  // one per component of G[V\T]
};

// Strong-decomposes each connected component of G[V\T] and contracts every
// cluster. Capacities must be integral (multiplicities of unit edges).
CutSparsifier build_cut_sparsifier_unit(const CapGraph& g, const CutBuildOptions& opt = {});

// eps' in (0,1]: cap at C, expand with eps = eps'/3, run the unit builder,
// scale H's capacities by eps. Claimed quality 3 + eps'.
CutSparsifier build_cut_sparsifier(const CapGraph& g, const Q& eps_prime,
                                   const CutBuildOptions& opt = {});

struct LiftStep {
  int cluster;
  Q added;    // E_X or E_Y, whichever side the cluster left
  Q removed;  // E'_R, inner cut edges that stop crossing
  bool to_x;
};

struct LiftedCut {
  std::vector<char> g_side;  // every cluster whole; 1 = X
  std::vector<char> h_side;
  Q original;
  Q lifted;
  std::vector<LiftStep> steps;
};

// Moves each cluster (in id order) wholly to X or Y by comparing
// |E_X|+|E_XY| with |E_Y|+|E_YX|, capacity-weighted; ties go to Y.
LiftedCut lift_cut(const CapGraph& g, const ContractionMap& m, const std::vector<char>& g_side);
// Side of each G vertex = side of its supernode.
std::vector<char> project_cut(const ContractionMap& m, const std::vector<char>& h_side);

}  // namespace vsp
