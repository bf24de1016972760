#include "vsparse/flow.hpp"

#include <algorithm>
#include <map>

#include "vsparse/errors.hpp"

namespace vsp {

std::vector<Q> edge_loads(const CapGraph& g, const FlowSolution& f) {
  std::vector<Q> load(g.num_edges(), 0);
  if (!f.extra_load.empty()) load = f.extra_load;
  for (const Commodity& c : f.commodities)
    for (EdgeId e = 0; e < g.num_edges(); ++e) load[e] += abs(c.flow[e]);
  return load;
}

Q congestion(const CapGraph& g, const FlowSolution& f) {
  auto load = edge_loads(g, f);
  Q best = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    Q r = load[e] / g.edge(e).cap;
    if (r > best) best = r;
  }
  return best;
}

bool conserves(const CapGraph& g, const FlowSolution& f, std::string* why) {
  for (std::size_t i = 0; i < f.commodities.size(); ++i) {
    const Commodity& c = f.commodities[i];
    if (static_cast<int>(c.flow.size()) != g.num_edges()) {
      if (why) *why = "commodity " + std::to_string(i) + " has wrong edge count";
      return false;
    }
    std::vector<Q> net(g.num_vertices(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      net[g.edge(e).u] += c.flow[e];
      net[g.edge(e).v] -= c.flow[e];
    }
    Q total = 0;
    for (const auto& [t, a] : c.sinks) {
      net[t] += a;
      total += a;
    }
    net[c.source] -= total;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (net[v] != 0) {
        if (why)
          *why = "commodity " + std::to_string(i) + " violates conservation at vertex " +
                 std::to_string(v) + " by " + to_string(net[v]);
        return false;
      }
    }
  }
  return true;
}

std::vector<PathFlow> decompose_paths(const CapGraph& g, const Commodity& c) {
  // residual positive flow along each direction
  std::vector<Q> rem = c.flow;
  std::map<VertexId, Q> need;
  for (const auto& [t, a] : c.sinks)
    if (a > 0) need[t] += a;
  std::vector<PathFlow> out;
  std::vector<int> seen(g.num_vertices(), -1);
  std::vector<EdgeId> via(g.num_vertices(), -1);
  int stamp = 0;
  while (!need.empty()) {
    ++stamp;
    std::vector<VertexId> stack{c.source};
    seen[c.source] = stamp;
    VertexId hit = -1;
    while (!stack.empty() && hit < 0) {
      VertexId v = stack.back();
      stack.pop_back();
      if (v != c.source && need.count(v)) {
        hit = v;
        break;
      }
      for (EdgeId e : g.incident(v)) {
        bool fwd = g.edge(e).u == v;
        if ((fwd && rem[e] > 0) || (!fwd && rem[e] < 0)) {
          VertexId w = g.other(e, v);
          if (seen[w] == stamp) continue;
          seen[w] = stamp;
          via[w] = e;
          stack.push_back(w);
        }
      }
    }
    if (hit < 0) throw InternalError("decompose_paths: flow does not reach its sinks");
    PathFlow p;
    Q amount = need[hit];
    for (VertexId v = hit; v != c.source;) {
      EdgeId e = via[v];
      amount = std::min(amount, Q(abs(rem[e])));
      p.edges.push_back(e);
      p.vertices.push_back(v);
      v = g.other(e, v);
    }
    p.vertices.push_back(c.source);
    std::reverse(p.edges.begin(), p.edges.end());
    std::reverse(p.vertices.begin(), p.vertices.end());
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      EdgeId e = p.edges[i];
      if (g.edge(e).u == p.vertices[i])
        rem[e] -= amount;
      else
        rem[e] += amount;
    }
    p.amount = amount;
    need[hit] -= amount;
    if (need[hit] == 0) need.erase(hit);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Q> paths_to_flow(const CapGraph& g, const std::vector<PathFlow>& paths) {
  std::vector<Q> f(g.num_edges(), 0);
  for (const PathFlow& p : paths) {
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      EdgeId e = p.edges[i];
      if (g.edge(e).u == p.vertices[i])
        f[e] += p.amount;
      else
        f[e] -= p.amount;
    }
  }
  return f;
}

}  // namespace vsp
