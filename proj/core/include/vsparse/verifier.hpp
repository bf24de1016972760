#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vsparse/flow_sparsifier.hpp"
#include "vsparse/routing.hpp"

namespace vsp {

// One cut bipartition or one demand set. Values are min cuts (cut mode) or
// congestions (flow mode); ratio = h/g for cuts and g/h for flows, so both
// read "how much quality this test witnessed".
struct QualityRecord {
  std::string id;
  std::string input;  // terminal side mask, or the demand pairs
  Q g_value = 0, h_value = 0;
  Q ratio = 1;
  bool infinite = false;  // ratio unbounded (h or g zero where the other is not)
  bool lower_ok = true;
};

struct QualityReport {
  std::string mode;  // cut | flow
  std::vector<QualityRecord> tests;  // sorted by id
  std::vector<std::string> violations;
  Q q_observed = 1;
  Q claimed = 0;
  double delta = 0;  // LP tolerance; 0 for exact cut checks
  bool exhaustive = true;
  std::vector<std::string> budget_flags;

  // No violations and q_observed within claimed * (1 + 2 delta).
  bool ok() const;
};

struct CutVerifyOptions {
  int enum_budget = 16;      // exhaustive up to this many terminals
  int samples = 2000;        // random bipartitions past the budget
  std::uint64_t seed = 1;
  int workers = 1;
};

// Terminals of g and h correspond by index. Exhaustive over the 2^(k-1)-1
// nontrivial bipartitions within budget, exact rationals.
QualityReport verify_cut_quality(const CapGraph& g, const CapGraph& h, const Q& claimed,
                                 const CutVerifyOptions& opt = {});

enum class DemandStrategy { Uniform, Matching, Gravity, Adversarial };
const char* strategy_name(DemandStrategy s);
DemandStrategy parse_strategy(const std::string& name);

struct FlowVerifyOptions {
  std::vector<DemandStrategy> strategies{DemandStrategy::Uniform, DemandStrategy::Matching,
                                         DemandStrategy::Gravity, DemandStrategy::Adversarial};
  int samples = 8;            // matchings drawn; adversarial restarts
  int adversarial_steps = 12;
  std::uint64_t seed = 1;
  RoutingOptions routing;     // delta lives here
  int workers = 1;
};

// Seeded demand families on k terminals (terminal degrees from g for gravity).
DemandSet uniform_demands(int k);
DemandSet matching_demands(int k, std::uint64_t seed);
DemandSet gravity_demands(const CapGraph& g);
DemandSet random_demands(int k, std::uint64_t seed);

struct FlowPair {
  RoutingResult g, h;
};
FlowPair evaluate_demands(const CapGraph& g, const CapGraph& h, const DemandSet& d, const RoutingOptions& opt);

// Sampled: q_observed is a lower bound on the flow quality.
QualityReport verify_flow_quality(const CapGraph& g, const CapGraph& h, const Q& claimed,
                                  const FlowVerifyOptions& opt = {});

// H against the contraction of g by the given preimages (one list per H
// vertex, terminals first-class). unit_eps > 0: every g capacity is first
// capped at the terminal capacity and rounded up to a multiple of unit_eps.
// require_connected: every supernode's preimage induces a connected graph.
CertReport check_restricted_structure(const CapGraph& g, const CapGraph& h,
                                      const std::vector<std::vector<VertexId>>& preimage, const Q& unit_eps,
                                      bool require_connected);

struct RecheckOptions {
  Q eta_star = 34;
  SparsestCutOptions cut;  // exact 1/3 re-certification within this budget
};

// Every cluster certificate of s re-derived on s.cert_graph: structure,
// conservation, pair demands 2cc'/z, exact congestion against the stored
// value and eta_star, exact 1/3-well-linkedness where the budget allows.
CertReport recheck_router_certificates(const RouterSparsifier& s, const RecheckOptions& opt = {});

std::string report_json(const QualityReport& r, int indent = 2);
std::string cert_report_json(const CertReport& r, int indent = 2);

}  // namespace vsp
