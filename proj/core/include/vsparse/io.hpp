#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vsparse/demand.hpp"
#include "vsparse/flow.hpp"
#include "vsparse/graph.hpp"

namespace vsp {

// Text format, 1-based vertex ids:
//   p vsp <n> <m> <k>
//   e <u> <v> <cap>      cap as integer, decimal or a/b
//   t <v>
// '#' starts a comment. Input graphs must have every capacity >= 1.
CapGraph read_graph(std::istream& in, bool require_cap_ge_one = true);
CapGraph read_graph_file(const std::string& path, bool require_cap_ge_one = true);
void write_graph(std::ostream& out, const CapGraph& g);
void write_graph_file(const std::string& path, const CapGraph& g);

// Sparsifier file: the graph of H followed by
//   param <key> <value>
//   map <h-vertex> <g-vertex>...       (one line per H vertex)
//   cert <h-vertex> eta <value>         (router congestion of a supernode)
struct SparsifierFile {
  CapGraph h;
  std::vector<std::vector<VertexId>> preimage;
  std::vector<std::pair<std::string, std::string>> params;
  std::map<int, Q> cert_eta;

  std::string param(const std::string& key, const std::string& fallback = "") const;
};

SparsifierFile read_sparsifier(std::istream& in);
SparsifierFile read_sparsifier_file(const std::string& path);
void write_sparsifier(std::ostream& out, const SparsifierFile& s);
void write_sparsifier_file(const std::string& path, const SparsifierFile& s);

// Demand lines `d <t1> <t2> <value>` with 1-based vertex ids of terminals.
DemandSet read_demands(std::istream& in, const CapGraph& g);
void write_demands(std::ostream& out, const CapGraph& g, const DemandSet& d);

// Flow dump: `f <edge-id> <flow>` per edge with nonzero load, then
// `eta <value>`. Edge ids are 1-based.
void write_flow(std::ostream& out, const CapGraph& g, const FlowSolution& f);

}  // namespace vsp
