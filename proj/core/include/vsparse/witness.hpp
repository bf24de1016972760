#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vsparse/flow.hpp"
#include "vsparse/graph.hpp"
#include "vsparse/well_linked.hpp"

namespace vsp {

// A walk from `start` along `edges`; consecutive edges share the current
// endpoint. Walks that end at an edge end with that edge.
struct Walk {
  VertexId start = -1;
  std::vector<EdgeId> edges;
};

// Vertex reached after the last edge; throws InputError if not contiguous.
VertexId walk_end(const CapGraph& g, const Walk& w);
Walk concat(const CapGraph& g, const Walk& a, const Walk& b);

struct Target {
  VertexId at = -1;  // vertex to reach
  EdgeId via = -1;   // if set, then cross this edge (at is its near endpoint)
};

// Integral 1:1 routing: every source sends one unit to a distinct target with
// at most mult * c_e walks on each edge (the final crossings included).
// walks[i] belongs to sources[i]; target_of[i] indexes targets.
struct OneToOne {
  std::vector<Walk> walks;
  std::vector<int> target_of;
  int mult = 0;
};
std::optional<OneToOne> route_one_to_one(const CapGraph& g, const std::vector<VertexId>& sources,
                                         const std::vector<Target>& targets, int mult);
// Smallest mult in [1, max_mult] that succeeds.
std::optional<OneToOne> route_one_to_one_min(const CapGraph& g, const std::vector<VertexId>& sources,
                                             const std::vector<Target>& targets, int max_mult);

struct Witness {
  int kind = 1;
  // kind 1: the sets S'_j; paths[j] joins ceil(k/2) terminals to out(S'_j)
  std::vector<std::vector<VertexId>> sets;
  // kind 2: the set A, groups E_1..E_r of ceil(k/4) boundary edges, the
  // terminals T*, and paths[j]: T* -> E_j with congestion <= 2
  std::vector<VertexId> a;
  std::vector<VertexId> tstar;
  std::vector<std::vector<EdgeId>> groups;  // kind 1: the edges the paths end at
  std::vector<std::vector<Walk>> paths;
  // best cut found when the witness was built; exact when certified
  std::vector<Q> alpha;
  std::vector<char> alpha_certified;
};

int witness_r(const Witness& w);

// Everything in the definitions, recomputed: disjointness, sizes, path
// endpoints and congestion by edge counting, and well-linkedness against
// alpha_W(floor k*) (kind 1, k* = 2kr log2 r) or alpha_W(r ceil(k/4)) (kind 2)
// by the exact sparsest cut.
CertReport verify_witness(const CapGraph& g, const Witness& w, long weak_mult = 128,
                          const SparsestCutOptions& cut = {});

// Witness found in a contracted graph, restated in the original graph:
// supernodes expand to their clusters, edges map to their origin; paths are
// dropped (witness_to_flow routes its own).
Witness uncontract_witness(const ContractionMap& m, const Witness& w);

struct WitnessFlow {
  bool ok = false;
  std::string why;
  FlowSolution flow;  // one commodity per terminal, to every later terminal
  Q congestion = 0;
  Q pair_amount = 0;  // 1/k
  int path_mult = 0;    // congestion of the terminal -> edge systems
  int spread_mult = 0;  // congestion of the terminal -> terminal systems
  Q inner_congestion = 0;
};

// Concurrent flow in which every pair of terminals exchanges 1/k in total,
// following the witness: terminals reach the witness edges through integral
// path systems, and traffic between edges is spread by a min-congestion flow
// inside the witness sets. g must be the graph of R = V \ T (unit capacities,
// degree-1 terminals).
WitnessFlow witness_to_flow(const CapGraph& g, const Witness& w);

// Text form, one record per line:
//   kind <1|2> / set <v...> / a <v...> / tstar <v...> / group <e...> /
//   path <j> <start> <e...>
// Vertex and edge ids are 1-based as in the graph format.
Witness read_witness(std::istream& in);
void write_witness(std::ostream& out, const Witness& w);

}  // namespace vsp
