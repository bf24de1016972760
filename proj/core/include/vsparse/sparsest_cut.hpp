#pragma once

#include <cstdint>
#include <span>

#include "vsparse/graph.hpp"
#include "vsparse/maxflow.hpp"

namespace vsp {

struct SparsestCutOptions {
  // Largest number of attachment vertices (distinct inner endpoints of
  // terminal edges) the exact solver enumerates over.
  int budget = 22;
};

// Terminals of G_S are weighted by their edge capacity, so a bucket of
// parallel boundary edges is one terminal of integer weight.
//
// Exact minimum: with two or more terminals a cut that strands a terminal
// away from its attachment vertex can be moved to one that does not, without
// raising sparsity, as long as sparsity <= 1; such cuts bottom out at
// sparsity 1 (a lone pendant edge). So the optimum is min(1, best cut that
// splits the attachment vertices), and the latter is one max-flow per
// attachment bipartition.
CutCertificate sparsest_cut_exact(const SubdividedInstance& inst, const SparsestCutOptions& opt = {});

// Spectral sweep and BFS sweeps over inner vertices, then single-vertex
// moves. The returned sparsity is exact for the returned cut.
CutCertificate sparsest_cut_heuristic(const SubdividedInstance& inst, std::uint64_t seed = 0);

// Cut of G_S given a side for each inner vertex; terminals follow their
// attachment vertex.
CutCertificate evaluate_inner_cut(const SubdividedInstance& inst, const std::vector<char>& inner_side);

// Candidate ordering: sparsity, then cut value, then the sorted terminal
// indices on the side holding terminal 0.
bool better_cut(const SubdividedInstance& inst, const CutCertificate& a, const CutCertificate& b);

struct WellLinkedCheck {
  bool well_linked = false;
  bool certified = false;  // decided by the exact solver (or trivially)
  CutCertificate cut;
};

// alpha-well-linkedness of S for its boundary. Past the budget the heuristic
// may refute but never certify; then well_linked=false, certified=false.
WellLinkedCheck is_well_linked(const SubdividedInstance& inst, const Q& alpha,
                               const SparsestCutOptions& opt = {}, bool allow_heuristic = false);
WellLinkedCheck is_well_linked(const CapGraph& g, std::span<const VertexId> s, const Q& alpha,
                               const SparsestCutOptions& opt = {}, bool allow_heuristic = false);

// Number of attachment vertices (the exact solver's enumeration width).
int attachment_count(const SubdividedInstance& inst);

}  // namespace vsp
