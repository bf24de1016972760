#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vsparse/graph.hpp"
#include "vsparse/sparsest_cut.hpp"

namespace vsp {

enum class DecompKind { Weak, Strong };

struct ClusterCert {
  std::vector<VertexId> vertices;  // sorted
  Q boundary = 0;                  // capacity of out_G(R)
  int level = 0;                   // i with z/2^i < boundary <= z/2^(i-1); 0 if boundary is 0
  CutCertificate sparsest;         // best cut found in (G_R, T'_R)
  std::string source;              // exact | heuristic
  bool certified = false;          // sparsest is the exact optimum
};

struct SplitRecord {
  std::vector<VertexId> parent;
  Q parent_boundary = 0;
  Q sparsity = 0;
  Q smaller_boundary = 0;  // |out_G(A)| for the side with less terminal weight
  std::string source;
};

struct Decomposition {
  DecompKind kind = DecompKind::Strong;
  std::vector<VertexId> parent;
  Q z = 0;  // |out(S)|
  std::vector<ClusterCert> clusters;
  std::vector<SplitRecord> splits;
  Q boundary_tally = 0;
  long weak_mult = 128;
};

struct DecompOptions {
  SparsestCutOptions cut;
  // weak only: past the budget use the heuristic instead of refusing
  bool allow_heuristic = true;
  std::uint64_t seed = 0;
  // weak threshold is 1/(weak_mult * max(1, log2 z)); 128 is the proven one
  long weak_mult = 128;
};

// Exact test of sparsity < 1/(mult * max(1, log2 z)) for integral z.
bool below_weak_threshold(const Q& sparsity, const Q& z, long mult = 128);
// 1/(mult * max(1, log2 z)), for display and the flow parameters.
double weak_threshold(double z, long mult = 128);
// level i of a cluster with the given boundary inside a parent of boundary z
int boundary_level(const Q& boundary, const Q& z);

// Split the cluster with the largest boundary first (ties: smallest member)
// while its sparsest cut is below the threshold. Initial partition: the
// connected components of G[S].
Decomposition weak_decompose(const CapGraph& g, std::span<const VertexId> s,
                             const DecompOptions& opt = {});
// Split while the exact sparsest cut is below 1/3. G[S] must be connected.
Decomposition strong_decompose(const CapGraph& g, std::span<const VertexId> s,
                               const DecompOptions& opt = {});

struct CheckItem {
  std::string name;
  bool ok;
  std::string detail;
};

struct CertReport {
  std::vector<CheckItem> items;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail = {});
};

// Recomputes every postcondition of d from G alone.
CertReport certify_decomposition(const CapGraph& g, const Decomposition& d,
                                 const SparsestCutOptions& opt = {});

// `c <level> <alpha> <vertices>` per cluster (1-based ids) after a header.
std::string dump_decomposition(const Decomposition& d);

}  // namespace vsp
