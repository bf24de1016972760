#include "vsparse/io.hpp"

#include <fstream>
#include <sstream>

#include "vsparse/errors.hpp"

namespace vsp {

namespace {

struct LineReader {
  explicit LineReader(std::istream& s) : in(s) {}
  std::istream& in;
  int line_no = 0;
  std::string line;

  // Next non-empty, comment-stripped line split into tokens.
  bool next(std::vector<std::string>& tok) {
    while (std::getline(in, line)) {
      ++line_no;
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      std::istringstream ss(line);
      tok.clear();
      for (std::string w; ss >> w;) tok.push_back(w);
      if (!tok.empty()) return true;
    }
    return false;
  }
};

long parse_int(const std::string& s, int line_no, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("bad ") + what + " '" + s + "'");
  }
  if (pos != s.size()) throw ParseError(line_no, std::string("bad ") + what + " '" + s + "'");
  return v;
}

VertexId parse_vertex(const std::string& s, int n, int line_no) {
  long v = parse_int(s, line_no, "vertex id");
  if (v < 1 || v > n) throw ParseError(line_no, "vertex id " + s + " out of range");
  return static_cast<VertexId>(v - 1);
}

// Shared by graph and sparsifier readers; extra lines go to `other`.
CapGraph read_graph_body(LineReader& rd, bool cap_ge_one,
                         std::vector<std::pair<int, std::vector<std::string>>>* other) {
  std::vector<std::string> tok;
  long n = -1, m = 0, k = 0;
  CapGraph g;
  int edges = 0, terms = 0;
  while (rd.next(tok)) {
    const std::string& kind = tok[0];
    if (kind == "p") {
      if (n >= 0) throw ParseError(rd.line_no, "duplicate header");
      if (tok.size() != 5 || tok[1] != "vsp")
        throw ParseError(rd.line_no, "header must be 'p vsp <n> <m> <k>'");
      n = parse_int(tok[2], rd.line_no, "vertex count");
      m = parse_int(tok[3], rd.line_no, "edge count");
      k = parse_int(tok[4], rd.line_no, "terminal count");
      if (n < 0 || m < 0 || k < 0 || k > n) throw ParseError(rd.line_no, "inconsistent header");
      g = CapGraph(static_cast<int>(n));
      continue;
    }
    if (n < 0) throw ParseError(rd.line_no, "data before 'p' header");
    if (kind == "e") {
      if (tok.size() != 4) throw ParseError(rd.line_no, "edge line must be 'e <u> <v> <cap>'");
      VertexId u = parse_vertex(tok[1], static_cast<int>(n), rd.line_no);
      VertexId v = parse_vertex(tok[2], static_cast<int>(n), rd.line_no);
      if (u == v) throw ParseError(rd.line_no, "self-loop");
      Q cap;
      try {
        cap = parse_rational(tok[3]);
      } catch (const InputError& e) {
        throw ParseError(rd.line_no, e.what());
      }
      if (cap_ge_one ? cap < 1 : cap <= 0)
        throw ParseError(rd.line_no, "capacity " + tok[3] + (cap_ge_one ? " below 1" : " not positive"));
      if (++edges > m) throw ParseError(rd.line_no, "more edges than the header declares");
      g.add_edge(u, v, cap);
    } else if (kind == "t") {
      if (tok.size() != 2) throw ParseError(rd.line_no, "terminal line must be 't <v>'");
      VertexId v = parse_vertex(tok[1], static_cast<int>(n), rd.line_no);
      if (g.is_terminal(v)) throw ParseError(rd.line_no, "duplicate terminal " + tok[1]);
      if (++terms > k) throw ParseError(rd.line_no, "more terminals than the header declares");
      g.add_terminal(v);
    } else if (other) {
      other->emplace_back(rd.line_no, tok);
    } else {
      throw ParseError(rd.line_no, "unknown line type '" + kind + "'");
    }
  }
  if (n < 0) throw ParseError(rd.line_no, "missing 'p vsp' header");
  if (edges != m)
    throw ParseError(rd.line_no, "header declares " + std::to_string(m) + " edges, found " +
                                     std::to_string(edges));
  if (terms != k)
    throw ParseError(rd.line_no, "header declares " + std::to_string(k) + " terminals, found " +
                                     std::to_string(terms));
  return g;
}

}  // namespace

CapGraph read_graph(std::istream& in, bool require_cap_ge_one) {
  LineReader rd(in);
  return read_graph_body(rd, require_cap_ge_one, nullptr);
}

CapGraph read_graph_file(const std::string& path, bool require_cap_ge_one) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_graph(in, require_cap_ge_one);
}

void write_graph(std::ostream& out, const CapGraph& g) {
  out << "p vsp " << g.num_vertices() << ' ' << g.num_edges() << ' ' << g.k() << '\n';
  for (const Edge& e : g.edges())
    out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << to_string(e.cap) << '\n';
  for (VertexId t : g.terminals()) out << "t " << t + 1 << '\n';
}

void write_graph_file(const std::string& path, const CapGraph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_graph(out, g);
}

std::string SparsifierFile::param(const std::string& key, const std::string& fallback) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return fallback;
}

SparsifierFile read_sparsifier(std::istream& in) {
  LineReader rd(in);
  std::vector<std::pair<int, std::vector<std::string>>> other;
  SparsifierFile s;
  s.h = read_graph_body(rd, false, &other);
  s.preimage.assign(s.h.num_vertices(), {});
  std::vector<char> mapped(s.h.num_vertices(), 0);
  for (const auto& [line_no, tok] : other) {
    if (tok[0] == "param") {
      if (tok.size() != 3) throw ParseError(line_no, "param line must be 'param <key> <value>'");
      s.params.emplace_back(tok[1], tok[2]);
    } else if (tok[0] == "map") {
      if (tok.size() < 3) throw ParseError(line_no, "map line needs a supernode and members");
      VertexId h = parse_vertex(tok[1], s.h.num_vertices(), line_no);
      if (mapped[h]) throw ParseError(line_no, "vertex mapped twice");
      mapped[h] = 1;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        long v = parse_int(tok[i], line_no, "vertex id");
        if (v < 1) throw ParseError(line_no, "vertex id out of range");
        s.preimage[h].push_back(static_cast<VertexId>(v - 1));
      }
    } else if (tok[0] == "cert") {
      if (tok.size() != 4 || tok[2] != "eta")
        throw ParseError(line_no, "cert line must be 'cert <h-vertex> eta <value>'");
      int c = static_cast<int>(parse_int(tok[1], line_no, "vertex id"));
      try {
        s.cert_eta[c] = parse_rational(tok[3]);
      } catch (const InputError& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      throw ParseError(line_no, "unknown line type '" + tok[0] + "'");
    }
  }
  for (int h = 0; h < s.h.num_vertices(); ++h)
    if (!mapped[h]) throw ParseError(rd.line_no, "missing map line for vertex " + std::to_string(h + 1));
  return s;
}

SparsifierFile read_sparsifier_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_sparsifier(in);
}

void write_sparsifier(std::ostream& out, const SparsifierFile& s) {
  write_graph(out, s.h);
  for (const auto& [k, v] : s.params) out << "param " << k << ' ' << v << '\n';
  for (int h = 0; h < s.h.num_vertices(); ++h) {
    out << "map " << h + 1;
    for (VertexId v : s.preimage[h]) out << ' ' << v + 1;
    out << '\n';
  }
  for (const auto& [c, eta] : s.cert_eta) out << "cert " << c << " eta " << to_string(eta) << '\n';
}

void write_sparsifier_file(const std::string& path, const SparsifierFile& s) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_sparsifier(out, s);
}

DemandSet read_demands(std::istream& in, const CapGraph& g) {
  LineReader rd(in);
  DemandSet d(g.k());
  std::vector<std::string> tok;
  while (rd.next(tok)) {
    if (tok[0] != "d" || tok.size() != 4)
      throw ParseError(rd.line_no, "demand line must be 'd <t1> <t2> <value>'");
    VertexId a = parse_vertex(tok[1], g.num_vertices(), rd.line_no);
    VertexId b = parse_vertex(tok[2], g.num_vertices(), rd.line_no);
    if (!g.is_terminal(a) || !g.is_terminal(b))
      throw ParseError(rd.line_no, "demand endpoint is not a terminal");
    if (a == b) throw ParseError(rd.line_no, "demand from a terminal to itself");
    Q v;
    try {
      v = parse_rational(tok[3]);
    } catch (const InputError& e) {
      throw ParseError(rd.line_no, e.what());
    }
    if (v < 0) throw ParseError(rd.line_no, "negative demand");
    d.add(g.terminal_index(a), g.terminal_index(b), v);
  }
  return d;
}

void write_demands(std::ostream& out, const CapGraph& g, const DemandSet& d) {
  for (const auto& [a, b, v] : d.pairs())
    out << "d " << g.terminals()[a] + 1 << ' ' << g.terminals()[b] + 1 << ' ' << to_string(v)
        << '\n';
}

void write_flow(std::ostream& out, const CapGraph& g, const FlowSolution& f) {
  auto load = edge_loads(g, f);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (load[e] != 0) out << "f " << e + 1 << ' ' << to_string(load[e]) << '\n';
  out << "eta " << to_string(congestion(g, f)) << '\n';
}

}  // namespace vsp
