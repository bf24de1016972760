#include "sabotage.hpp"

#include <algorithm>
#include <functional>

#include "vsparse/errors.hpp"
#include "vsparse/verifier.hpp"

namespace sabotage {

using namespace vsp;

namespace {

struct EdgeSpec {
  VertexId u, v;
  Q cap;
};

CapGraph rebuild(const CapGraph& h, const std::vector<EdgeSpec>& edges, int skip_terminal = -1) {
  CapGraph out(h.num_vertices());
  for (const EdgeSpec& e : edges) out.add_edge(e.u, e.v, e.cap);
  for (int i = 0; i < h.k(); ++i)
    if (i != skip_terminal) out.add_terminal(h.terminals()[i]);
  return out;
}

std::vector<EdgeSpec> specs(const CapGraph& h) {
  std::vector<EdgeSpec> s;
  for (const Edge& e : h.edges()) s.push_back({e.u, e.v, e.cap});
  return s;
}

std::string first_failure(const CertReport& r) {
  for (const CheckItem& it : r.items)
    if (!it.ok) return it.name + (it.detail.empty() ? "" : " (" + it.detail + ")");
  return {};
}

}  // namespace

bool cut_suite_ok(const CapGraph& g, const CapGraph& h, const std::vector<std::vector<VertexId>>& pre,
                  const Q& unit_eps, const Q& claimed, std::string* why) {
  try {
    CertReport st = check_restricted_structure(g, h, pre, unit_eps, false);
    if (!st.ok()) {
      if (why) *why = first_failure(st);
      return false;
    }
    QualityReport q = verify_cut_quality(g, h, claimed);
    if (!q.ok()) {
      if (why) *why = q.violations.empty() ? "q_observed " + to_string(q.q_observed) : q.violations.front();
      return false;
    }
  } catch (const std::exception& e) {
    if (why) *why = std::string("rejected: ") + e.what();
    return false;
  }
  return true;
}

std::vector<Outcome> corrupt_cut(const CapGraph& g, const CutSparsifier& s) {
  const Q unit_eps = s.claimed_q != 3 ? s.eps_internal : Q(0);  // capacitated mode
  std::vector<Outcome> out;
  auto run = [&](const std::string& name, const CapGraph& h, const std::vector<std::vector<VertexId>>& pre) {
    Outcome o;
    o.name = "cut: " + name;
    o.flagged = !cut_suite_ok(g, h, pre, unit_eps, s.claimed_q, &o.by);
    out.push_back(o);
  };
  const CapGraph& h = s.h;
  const auto& pre = s.map.preimage;
  std::vector<VertexId> supers;
  for (VertexId x = 0; x < h.num_vertices(); ++x)
    if (!h.is_terminal(x) && pre[x].size() >= 2) supers.push_back(x);
  EdgeId touching = -1;
  for (EdgeId e = 0; e < h.num_edges() && touching < 0; ++e)
    if (!supers.empty() && (h.edge(e).u == supers[0] || h.edge(e).v == supers[0])) touching = e;
  if (touching < 0 && h.num_edges() > 0) touching = 0;

  if (touching >= 0) {
    auto e = specs(h);
    e.erase(e.begin() + touching);
    run("delete an H edge", rebuild(h, e), pre);
    e = specs(h);
    e[touching].cap += 1;
    run("raise an H capacity", rebuild(h, e), pre);
    e = specs(h);
    e[touching].cap /= 2;
    run("halve an H capacity", rebuild(h, e), pre);
    e = specs(h);
    VertexId other = (e[touching].v + 1) % h.num_vertices();
    if (other == e[touching].u) other = (other + 1) % h.num_vertices();
    e[touching].v = other;
    run("redirect an H edge", rebuild(h, e), pre);
  }
  if (h.k() >= 2) {
    auto e = specs(h);
    e.push_back({h.terminals()[0], h.terminals()[1], 1});
    run("add a terminal-terminal edge", rebuild(h, e), pre);
    run("unmark a terminal in H", rebuild(h, specs(h), 0), pre);
    auto p = pre;
    std::swap(p[h.terminals()[0]], p[h.terminals()[1]]);
    run("swap two terminal map lines", h, p);
  }
  if (!supers.empty()) {
    auto e = specs(h);
    e.push_back({supers[0], h.terminals()[0], 1});
    run("add a supernode-terminal edge", rebuild(h, e), pre);
    auto p = pre;
    p[supers[0]].pop_back();
    run("drop a vertex from the map", h, p);
    p = pre;
    p[supers[0]].push_back(pre[h.terminals()[0]][0]);
    std::sort(p[supers[0]].begin(), p[supers[0]].end());
    run("map a terminal into a supernode", h, p);
    if (supers.size() >= 2) {
      p = pre;
      p[supers[1]].push_back(p[supers[0]].back());
      p[supers[0]].pop_back();
      std::sort(p[supers[1]].begin(), p[supers[1]].end());
      run("move a vertex between supernodes", h, p);
      p = pre;
      p[supers[1]].push_back(pre[supers[0]][0]);
      std::sort(p[supers[1]].begin(), p[supers[1]].end());
      run("map a vertex twice", h, p);
    }
  }
  return out;
}

std::vector<Outcome> corrupt_flow(const RouterSparsifier& s) {
  std::vector<Outcome> out;
  auto run = [&](const std::string& name, const RouterSparsifier& bad) {
    Outcome o;
    o.name = "flow: " + name;
    try {
      CertReport r = recheck_router_certificates(bad);
      o.flagged = !r.ok();
      o.by = first_failure(r);
    } catch (const std::exception& e) {
      o.flagged = true;
      o.by = std::string("rejected: ") + e.what();
    }
    out.push_back(o);
  };
  if (s.certs.empty()) return out;
  auto with = [&](const std::function<void(RouterSparsifier&)>& edit) {
    RouterSparsifier c = s;
    edit(c);
    return c;
  };
  // an edge of the first certificate flow that carries something
  const RouterCert& rc0 = s.certs[0];
  std::size_t ci = 0;
  EdgeId fe = -1;
  for (std::size_t c = 0; c < rc0.flow.commodities.size() && fe < 0; ++c)
    for (EdgeId e = 0; e < static_cast<EdgeId>(rc0.flow.commodities[c].flow.size()); ++e)
      if (rc0.flow.commodities[c].flow[e] != 0) {
        ci = c;
        fe = e;
        break;
      }

  if (fe >= 0) {
    run("add 1 to a certificate flow value", with([&](auto& c) { c.certs[0].flow.commodities[ci].flow[fe] += 1; }));
    run("negate a certificate flow value", with([&](auto& c) {
          auto& x = c.certs[0].flow.commodities[ci].flow[fe];
          x = -x;
        }));
    run("negate a whole commodity", with([&](auto& c) {
          for (auto& x : c.certs[0].flow.commodities[ci].flow) x = -x;
        }));
    run("double a commodity and its sinks", with([&](auto& c) {
          auto& cm = c.certs[0].flow.commodities[ci];
          for (auto& x : cm.flow) x *= 2;
          for (auto& sk : cm.sinks) sk.second *= 2;
        }));
  }
  if (!rc0.flow.commodities.empty()) {
    run("drop a commodity", with([](auto& c) { c.certs[0].flow.commodities.pop_back(); }));
    run("zero every certificate flow", with([](auto& c) {
          for (auto& cm : c.certs[0].flow.commodities)
            for (auto& x : cm.flow) x = 0;
        }));
    if (!rc0.flow.commodities[0].sinks.empty())
      run("raise a sink amount", with([](auto& c) { c.certs[0].flow.commodities[0].sinks[0].second += frac(1, 7); }));
  }
  run("understate the stored congestion", with([](auto& c) { c.certs[0].eta /= 2; }));
  run("overstate the stored congestion", with([](auto& c) { c.certs[0].eta += 1; }));
  run("misstate the boundary size", with([](auto& c) { c.certs[0].z += 1; }));
  run("drop a certificate", with([](auto& c) { c.certs.pop_back(); }));
  if (s.certs.size() >= 2)
    run("swap two certificates", with([](auto& c) { std::swap(c.certs[0], c.certs[1]); }));
  if (s.h.num_edges() > 0) {
    run("raise an H capacity", with([](auto& c) { c.h.set_capacity(0, c.h.edge(0).cap + 1); }));
    run("delete an H edge", with([](auto& c) {
          auto e = specs(c.h);
          e.pop_back();
          c.h = rebuild(c.h, e);
        }));
  }
  if (rc0.vertices.size() >= 2)
    run("drop a vertex from a cluster", with([](auto& c) {
          VertexId v = c.certs[0].vertices.back();
          VertexId x = c.map.supernode[0];
          c.map.clusters[0].pop_back();
          auto& p = c.map.preimage[x];
          p.erase(std::find(p.begin(), p.end(), v));
          c.certs[0].vertices.pop_back();
        }));
  if (s.cert_graph.k() > 0)
    run("put a terminal into a cluster", with([](auto& c) {
          VertexId t = c.cert_graph.terminals()[0];
          VertexId x = c.map.supernode[0];
          for (auto* v : {&c.map.clusters[0], &c.map.preimage[x], &c.certs[0].vertices}) {
            v->push_back(t);
            std::sort(v->begin(), v->end());
          }
        }));
  return out;
}

}  // namespace sabotage
