#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vsparse/flow_params.hpp"
#include "vsparse/graph.hpp"
#include "vsparse/router.hpp"
#include "vsparse/well_linked.hpp"
#include "vsparse/witness.hpp"

namespace vsp {

struct FlowBuildOptions {
  FlowParamOptions params;
  RouterOptions router;
  SparsestCutOptions cut;  // strong decompositions and witness checks
  // the contraction loop needs explicit unit edges; above this many it stops
  long unitize_limit = 20000;
};

// Certificate that one cluster is a good router, stated on the integral graph
// the builder ran on.
struct RouterCert {
  std::vector<VertexId> vertices;  // sorted
  Q z = 0;                         // boundary capacity
  Q eta = 0;                       // exact congestion of flow
  Q lower = 0;
  bool well_linked = false;
  bool wl_certified = false;
  Q wl_sparsity = 0;               // best cut found (1 if none)
  FlowSolution flow;               // on subdivide_boundary(cert_graph, vertices).g
  std::string method;
};

struct ContractEvent {
  int depth = 0;
  long k = 0;         // terminals of the level
  long boundary = 0;  // |out(S)| in G'
  long set_size = 0;  // |S| in G'
  long n_before = 0;  // |V(G')|
  long n_after = 0;   // |V(G'')|
  bool adopted = false;
  std::vector<long> piece_k;  // k_Z per strong cluster of S'
  // sum_Z F(k_Z) against 128 F(k''), on the theoretical table and on the
  // table the run used
  mpz_class ledger_lhs, ledger_rhs;
  mpz_class active_lhs, active_rhs;
  bool ledger_ok() const { return ledger_lhs <= ledger_rhs; }
};

struct RefineEvent {
  int depth = 0;
  long k = 0;
  long set_size = 0;
  long r = 0;
  std::vector<long> cut_history;  // |E(X,Y)| per iteration, first = initial
  std::vector<std::string> steps; // what produced each later entry
  long x_size = 0, y_size = 0;    // final partition, if one was returned
  std::string outcome;            // partition | witness | contractible | inconclusive
  bool balanced_ok = true;        // every partition had |X|,|Y| >= |S|/4
  bool decreasing_ok = true;      // the history strictly decreases
};

struct SearchEvent {
  int depth = 0;
  long k = 0;
  long n_nonterminal = 0;
  std::string outcome;  // contractible | witness1 | witness2 | inconclusive
  std::string detail;
  // largest weak cluster sizes against phase2_mult * F(ceil(k/2))
  std::vector<long> largest_cluster;
  mpz_class largest_needed;
};

struct WitnessEvent {
  int depth = 0;
  int kind = 0;
  int r = 0;
  bool verified = false;
  std::string verify_detail;
  bool flow_ok = false;
  Q congestion = 0;
  Q bound = 0;  // 10 or 34
  bool router_yes = false;
};

struct FlowBuildLog {
  std::vector<ContractEvent> contractions;
  std::vector<RefineEvent> refinements;
  std::vector<SearchEvent> searches;
  std::vector<WitnessEvent> witnesses;
  std::vector<std::string> notes;
  long router_checks = 0;
  long router_merges = 0;  // fallback merges after a stalled search
};

struct RouterSparsifier {
  CapGraph h;
  ContractionMap map;  // cert_graph ids -> H
  std::vector<RouterCert> certs;  // per cluster of map, same order
  Q claimed_q = 68;
  Q eps = 0;  // 0 in unit mode
  Q cap_limit = 0;
  FlowParams params;
  CapGraph cert_graph;  // integral graph the clusters were certified on
  std::vector<Decomposition> decompositions;  // top-level strong decompositions
  FlowBuildLog log;
};

// Contraction loop on one instance whose non-terminal part is
// 1/3-well-linked and whose terminals have degree 1; clusters are vertex
// ids of g and the log is filled.
RouterSparsifier build_flow_sparsifier_well_linked(const CapGraph& g, const FlowBuildOptions& opt = {});

// Integral capacities (buckets of unit edges): strong-decompose V\T, run the
// recursion per cluster on its boundary-subdivided graph with every bucket
// terminal split into unit terminals, and contract. Claimed quality 68.
RouterSparsifier build_flow_sparsifier_unit(const CapGraph& g, const FlowBuildOptions& opt = {});

// c_e >= 1, eps in (0,1): cap at C, c'_e = ceil(68 c_e / eps), build on the
// integral graph, scale H by eps/68. Claimed quality 68 + eps.
RouterSparsifier build_flow_sparsifier(const CapGraph& g, const Q& eps, const FlowBuildOptions& opt = {});

// Contractible in G' for k terminals: terminal-free, connected, |out| <=
// ceil(k/2) and |S| > contract_mult * F(|out|).
bool is_contractible(const CapGraph& gp, const std::vector<VertexId>& s, long k, const FlowParams& p);

struct SearchOutcome {
  enum class Kind { Contractible, Witness, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<VertexId> set;  // contractible set in G'
  Witness witness;            // in G'
  std::string detail;
};

// Both take G' with unit capacities and degree-1 terminals. k = |T|.
SearchOutcome find_contractible_or_witness(const CapGraph& gp, const FlowParams& p,
                                           const FlowBuildOptions& opt, FlowBuildLog& log,
                                           int depth = 0);

struct RefineOutcome {
  enum class Kind { Partition, Witness, Contractible, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<VertexId> x, y;
  std::vector<VertexId> set;
  Witness witness;
  std::string detail;
};

RefineOutcome balanced_cut_refine(const CapGraph& gp, const std::vector<VertexId>& s, const FlowParams& p,
                                  const FlowBuildOptions& opt, FlowBuildLog& log, int depth = 0);

// Constructive upper side: an H-flow with congestion eta_H, pushed back into
// the certificate graph. Every H edge keeps its flow on its origin edge;
// at each supernode the traffic between boundary buckets e and e' goes
// through every bucket b (share c_b/z) along the stored router flow.
struct Reroute {
  FlowSolution flow;  // on the certificate graph (same edge ids as the input)
  Q eta_h = 0;
  Q eta = 0;          // congestion of flow on the certificate graph
  Q inner_eta = 0;    // congestion restricted to cluster-internal edges
  // max over clusters and boundary edges of (traffic at e) / (eta_H c_H(e));
  // at most 1 for every H-flow
  Q restriction = 0;
};
Reroute reroute_through_clusters(const RouterSparsifier& s, const FlowSolution& h_flow);

// The router certificate of one cluster, recomputed on g.
RouterCert certify_router(const CapGraph& g, const std::vector<VertexId>& cluster, const RouterOptions& opt);

}  // namespace vsp
