// vsparse: build, verify, generate and inspect vertex sparsifiers.
//
// Exit codes: 0 ok / verified, 1 verification failure, 2 input or parameter
// error, 3 budget refusal. Errors are printed as one JSON object on stdout.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vsparse/cut_sparsifier.hpp"
#include "vsparse/errors.hpp"
#include "vsparse/flow_sparsifier.hpp"
#include "vsparse/generators.hpp"
#include "vsparse/io.hpp"
#include "vsparse/verifier.hpp"

using namespace vsp;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string command;
  std::string mode;  // cut | flow, empty = from the file (verify) or cut (build)
  std::string eps;   // empty = unit mode
  std::string profile = "aggressive";
  double c_beta = 1.0;
  long c_f = 4;
  long r_override = 0;
  int budget_exp = 22;
  int budget_enum = 16;
  int cut_samples = 2000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = available parallelism
  double delta = 1e-6;
  std::string out;
  bool require_exhaustive = false;
  bool dump_flows = false;

  // build / verify / inspect
  std::string input;
  std::string other;  // verify: the H file

  // verify flow
  std::vector<std::string> strategies{"uniform", "matching", "gravity", "adversarial"};
  int flow_samples = 8;
  int adversarial_steps = 12;
  std::string claimed;

  // gen
  std::string family;
  int n = 20, m = 40, k = 6, deg = 1, side = 8, rows = 5, cols = 5, d = 3, layers = 3;

  int worker_count() const {
    if (workers > 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

Q parse_eps(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw ParamError("--eps must be a number or a fraction, got '" + s + "'");
  }
}

FlowParamOptions param_options(const RunConfig& c) {
  FlowParamOptions o;
  if (c.profile == "aggressive")
    o.profile = Profile::Aggressive;
  else if (c.profile == "theoretical")
    o.profile = Profile::Theoretical;
  else
    throw ParamError("--profile must be theoretical or aggressive");
  o.c_beta = c.c_beta;
  o.c_f = c.c_f;
  o.r_override = c.r_override;
  return o;
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// The header echoes every knob the command used; identical configs print
// identical headers.
void print_header(const RunConfig& c, const std::string& mode, const std::optional<FlowParams>& fp) {
  std::cout << "# vsparse " << kVersion << ' ' << c.command << '\n';
  std::cout << "# mode=" << (mode.empty() ? "-" : mode) << " eps=" << (c.eps.empty() ? "unit" : c.eps)
            << " profile=" << c.profile << " seed=" << c.seed << " workers=" << c.worker_count()
            << " delta=" << fmt_double(c.delta) << '\n';
  std::cout << "# budgets: exp=" << c.budget_exp << " (attachment vertices, exact sparsest cut) enum="
            << c.budget_enum << " (terminals, exhaustive cut check) cut-samples=" << c.cut_samples << '\n';
  if (fp) {
    std::cout << "# flow params: " << fp->describe() << '\n';
  } else {
    std::cout << "# constants: eta*=34 beta=max(1," << fmt_double(c.c_beta) << "*log2 k) c_f=" << c.c_f
              << " r=" << (c.r_override ? std::to_string(c.r_override) : std::string("auto")) << '\n';
  }
}

json ids(const std::vector<VertexId>& v) {
  json a = json::array();
  for (VertexId x : v) a.push_back(x + 1);
  return a;
}

json decomposition_json(const Decomposition& d) {
  json j;
  j["kind"] = d.kind == DecompKind::Strong ? "strong" : "weak";
  j["z"] = to_string(d.z);
  j["boundary_tally"] = to_string(d.boundary_tally);
  json cl = json::array();
  for (const ClusterCert& c : d.clusters)
    cl.push_back({{"vertices", ids(c.vertices)},
                  {"boundary", to_string(c.boundary)},
                  {"level", c.level},
                  {"sparsity", c.sparsest.infinite ? "inf" : to_string(c.sparsest.sparsity)},
                  {"source", c.source},
                  {"certified", c.certified}});
  j["clusters"] = cl;
  json sp = json::array();
  for (const SplitRecord& s : d.splits)
    sp.push_back({{"parent_size", s.parent.size()},
                  {"parent_boundary", to_string(s.parent_boundary)},
                  {"sparsity", to_string(s.sparsity)},
                  {"smaller_boundary", to_string(s.smaller_boundary)},
                  {"source", s.source}});
  j["splits"] = sp;
  return j;
}

json flow_json(const FlowSolution& f) {
  json cms = json::array();
  for (const Commodity& c : f.commodities) {
    json sinks = json::array(), edges = json::array();
    for (const auto& [v, a] : c.sinks) sinks.push_back({v + 1, to_string(a)});
    for (EdgeId e = 0; e < static_cast<EdgeId>(c.flow.size()); ++e)
      if (c.flow[e] != 0) edges.push_back({e + 1, to_string(c.flow[e])});
    cms.push_back({{"source", c.source + 1}, {"sinks", sinks}, {"flow", edges}});
  }
  return cms;
}

json log_json(const FlowBuildLog& log) {
  json j;
  json cs = json::array();
  for (const ContractEvent& e : log.contractions)
    cs.push_back({{"depth", e.depth},
                  {"k", e.k},
                  {"boundary", e.boundary},
                  {"set_size", e.set_size},
                  {"n_before", e.n_before},
                  {"n_after", e.n_after},
                  {"adopted", e.adopted},
                  {"piece_k", e.piece_k},
                  {"ledger_theoretical", {e.ledger_lhs.get_str(), e.ledger_rhs.get_str()}},
                  {"ledger_active", {e.active_lhs.get_str(), e.active_rhs.get_str()}},
                  {"ledger_ok", e.ledger_ok()}});
  j["contractions"] = cs;
  json rs = json::array();
  for (const RefineEvent& e : log.refinements)
    rs.push_back({{"depth", e.depth},
                  {"k", e.k},
                  {"set_size", e.set_size},
                  {"r", e.r},
                  {"cut_history", e.cut_history},
                  {"steps", e.steps},
                  {"x_size", e.x_size},
                  {"y_size", e.y_size},
                  {"outcome", e.outcome},
                  {"balanced_ok", e.balanced_ok},
                  {"decreasing_ok", e.decreasing_ok}});
  j["refinements"] = rs;
  json ss = json::array();
  for (const SearchEvent& e : log.searches)
    ss.push_back({{"depth", e.depth},
                  {"k", e.k},
                  {"n_nonterminal", e.n_nonterminal},
                  {"outcome", e.outcome},
                  {"detail", e.detail},
                  {"largest_cluster", e.largest_cluster},
                  {"largest_needed", e.largest_needed.get_str()}});
  j["searches"] = ss;
  json ws = json::array();
  for (const WitnessEvent& e : log.witnesses)
    ws.push_back({{"depth", e.depth},
                  {"kind", e.kind},
                  {"r", e.r},
                  {"verified", e.verified},
                  {"verify_detail", e.verify_detail},
                  {"flow_ok", e.flow_ok},
                  {"congestion", to_string(e.congestion)},
                  {"bound", to_string(e.bound)},
                  {"router_yes", e.router_yes}});
  j["witnesses"] = ws;
  j["notes"] = log.notes;
  j["router_checks"] = log.router_checks;
  j["router_merges"] = log.router_merges;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string default_out(const std::string& input) {
  auto dot = input.rfind('.');
  auto slash = input.rfind('/');
  std::string stem = dot != std::string::npos && (slash == std::string::npos || dot > slash) ? input.substr(0, dot) : input;
  return stem + ".sparsifier.vsp";
}

std::size_t steiner_count(const CapGraph& h) { return h.num_vertices() - h.k(); }

int cmd_build(const RunConfig& c) {
  CapGraph g = read_graph_file(c.input);
  std::string mode = c.mode.empty() ? "cut" : c.mode;
  std::string out = c.out.empty() ? default_out(c.input) : c.out;
  std::string cert_path = out + ".cert.json";
  SparsifierFile file;
  json cert, summary;
  summary["input"] = {{"n", g.num_vertices()}, {"m", g.num_edges()}, {"k", g.k()}};

  if (mode == "cut") {
    CutBuildOptions opt;
    opt.cut.budget = c.budget_exp;
    CutSparsifier s = c.eps.empty() ? build_cut_sparsifier_unit(g, opt) : build_cut_sparsifier(g, parse_eps(c.eps), opt);
    print_header(c, mode, std::nullopt);
    Q unit_eps = c.eps.empty() ? Q(0) : s.eps_internal;
    file.h = s.h;
    file.preimage = s.map.preimage;
    file.params = {{"mode", "cut"},
                   {"eps", c.eps.empty() ? "unit" : to_string(s.eps_input)},
                   {"unit_eps", to_string(unit_eps)},
                   {"claimed_q", to_string(s.claimed_q)}};
    cert["mode"] = "cut";
    json ds = json::array();
    for (const auto& d : s.decompositions) ds.push_back(decomposition_json(d));
    cert["decompositions"] = ds;
    summary["clusters"] = s.map.clusters.size();
    summary["claimed_q"] = to_string(s.claimed_q);
    summary["h"] = {{"n", s.h.num_vertices()}, {"m", s.h.num_edges()}, {"steiner", steiner_count(s.h)}};
  } else if (mode == "flow") {
    FlowBuildOptions opt;
    opt.params = param_options(c);
    opt.cut.budget = c.budget_exp;
    opt.router.cut.budget = c.budget_exp;
    opt.router.routing.delta = c.delta;
    RouterSparsifier s = c.eps.empty() ? build_flow_sparsifier_unit(g, opt) : build_flow_sparsifier(g, parse_eps(c.eps), opt);
    print_header(c, mode, s.params);
    Q unit_eps = s.eps > 0 ? Q(s.eps / 68) : Q(0);
    file.h = s.h;
    file.preimage = s.map.preimage;
    file.params = {{"mode", "flow"},
                   {"eps", c.eps.empty() ? "unit" : to_string(s.eps)},
                   {"unit_eps", to_string(unit_eps)},
                   {"claimed_q", to_string(s.claimed_q)},
                   {"profile", s.params.profile_name()}};
    for (std::size_t i = 0; i < s.certs.size(); ++i) file.cert_eta[s.map.supernode[i] + 1] = s.certs[i].eta;
    cert["mode"] = "flow";
    cert["params"] = s.params.describe();
    json cs = json::array();
    for (std::size_t i = 0; i < s.certs.size(); ++i) {
      const RouterCert& rc = s.certs[i];
      json x = {{"cluster", i + 1},
                {"supernode", s.map.supernode[i] + 1},
                {"vertices", ids(rc.vertices)},
                {"z", to_string(rc.z)},
                {"eta", to_string(rc.eta)},
                {"lower", to_string(rc.lower)},
                {"well_linked", rc.well_linked},
                {"wl_certified", rc.wl_certified},
                {"wl_sparsity", to_string(rc.wl_sparsity)},
                {"method", rc.method}};
      if (c.dump_flows) x["flow"] = flow_json(rc.flow);
      cs.push_back(x);
    }
    cert["routers"] = cs;
    json ds = json::array();
    for (const auto& d : s.decompositions) ds.push_back(decomposition_json(d));
    cert["decompositions"] = ds;
    cert["log"] = log_json(s.log);
    summary["clusters"] = s.map.clusters.size();
    summary["claimed_q"] = to_string(s.claimed_q);
    summary["h"] = {{"n", s.h.num_vertices()}, {"m", s.h.num_edges()}, {"steiner", steiner_count(s.h)}};
    summary["steiner_bound"] = c.profile == "aggressive" ? s.params.F(s.params.k).get_str() : "n/a";
    summary["contractions"] = s.log.contractions.size();
  } else {
    throw ParamError("--mode must be cut or flow");
  }
  write_sparsifier_file(out, file);
  write_text(cert_path, cert.dump(1) + "\n");
  summary["sparsifier"] = out;
  summary["certificate"] = cert_path;
  std::cout << summary.dump(2) << '\n';
  return 0;
}

bool has_map_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("map ", 0) == 0) return true;
  return false;
}

int cmd_verify(const RunConfig& c) {
  CapGraph g = read_graph_file(c.input);
  bool is_sparsifier = has_map_lines(c.other);
  SparsifierFile file;
  if (is_sparsifier)
    file = read_sparsifier_file(c.other);
  else
    file.h = read_graph_file(c.other, false);
  std::string mode = !c.mode.empty() ? c.mode : file.param("mode", "cut");
  if (mode != "cut" && mode != "flow") throw ParamError("--mode must be cut or flow");
  if (file.h.k() != g.k()) throw InputError("G and H have different terminal counts");
  Q claimed = !c.claimed.empty() ? parse_eps(c.claimed) : parse_eps(file.param("claimed_q", mode == "cut" ? "3" : "68"));
  Q unit_eps = parse_eps(file.param("unit_eps", "0"));
  std::string eps_param = file.param("eps", "unit");

  print_header(c, mode, std::nullopt);
  json out;
  out["mode"] = mode;
  out["claimed_q"] = to_string(claimed);
  bool ok = true;
  if (is_sparsifier) {
    CertReport st = check_restricted_structure(g, file.h, file.preimage, unit_eps, mode == "flow");
    out["structure"] = json::parse(cert_report_json(st));
    ok = ok && st.ok();
  }

  if (mode == "cut") {
    if (g.k() > c.budget_enum && c.require_exhaustive)
      throw BudgetRefusal("k = " + std::to_string(g.k()) + " exceeds the enumeration budget " +
                          std::to_string(c.budget_enum));
    CutVerifyOptions o;
    o.enum_budget = c.budget_enum;
    o.samples = c.cut_samples;
    o.seed = c.seed;
    o.workers = c.worker_count();
    QualityReport r = verify_cut_quality(g, file.h, claimed, o);
    out["quality"] = json::parse(report_json(r));
    ok = ok && r.ok();
  } else {
    if (is_sparsifier && out["structure"]["ok"] == true) {
      // rebuild the cluster certificates on the graph the builder certified
      RouterSparsifier s;
      s.h = file.h;
      s.eps = eps_param == "unit" ? Q(0) : parse_eps(eps_param);
      s.cert_graph = s.eps > 0 ? unit_expand(g, s.eps / 68).g : g;
      s.map.preimage = file.preimage;
      RouterOptions ro;
      ro.cut.budget = c.budget_exp;
      ro.routing.delta = c.delta;
      // supernodes: merged vertices, plus any vertex that carries a certificate
      bool all_stored = true;
      std::string missing;
      for (VertexId x = 0; x < file.h.num_vertices(); ++x) {
        if (file.h.is_terminal(x)) continue;
        bool has_cert = file.cert_eta.count(x + 1) > 0;
        if (file.preimage[x].size() < 2 && !has_cert) continue;
        if (!has_cert && all_stored) {
          all_stored = false;
          missing = "supernode " + std::to_string(x + 1);
        }
        auto members = file.preimage[x];
        std::sort(members.begin(), members.end());
        s.map.clusters.push_back(members);
        s.map.supernode.push_back(x);
        s.certs.push_back(certify_router(s.cert_graph, members, ro));
      }
      RecheckOptions rco;
      rco.cut.budget = c.budget_exp;
      CertReport rc = recheck_router_certificates(s, rco);
      rc.add("every supernode has a stored certificate", all_stored, missing);
      bool stored = true;
      std::string detail;
      for (const auto& [x, eta] : file.cert_eta) {
        auto it = std::find(s.map.supernode.begin(), s.map.supernode.end(), x - 1);
        if (it == s.map.supernode.end() || s.certs[it - s.map.supernode.begin()].eta != eta) {
          stored = false;
          detail = "vertex " + std::to_string(x);
          break;
        }
      }
      rc.add("stored router congestions match", stored, detail);
      out["routers"] = json::parse(cert_report_json(rc));
      ok = ok && rc.ok();
    }
    FlowVerifyOptions o;
    o.strategies.clear();
    for (const auto& name : c.strategies) o.strategies.push_back(parse_strategy(name));
    o.samples = c.flow_samples;
    o.adversarial_steps = c.adversarial_steps;
    o.seed = c.seed;
    o.workers = c.worker_count();
    o.routing.delta = c.delta;
    QualityReport r = verify_flow_quality(g, file.h, claimed, o);
    out["quality"] = json::parse(report_json(r));
    ok = ok && r.ok();
  }
  out["verified"] = ok;
  std::cout << out.dump(2) << '\n';
  return ok ? 0 : 1;
}

int cmd_gen(const RunConfig& c) {
  CapGraph g(0);
  const std::string& f = c.family;
  if (f == "random-unit")
    g = gen_random_unit(c.n, c.m, c.k, c.deg, c.seed);
  else if (f == "random-cap")
    g = gen_random_capacitated(c.n, c.m, c.k, c.deg, c.seed);
  else if (f == "dumbbell")
    g = gen_dumbbell(c.k, c.side, c.seed);
  else if (f == "grid")
    g = gen_grid(c.rows, c.cols, c.k, c.seed);
  else if (f == "regular")
    g = gen_regular(c.n, c.d, c.k, c.seed);
  else if (f == "welllinked")
    g = gen_welllinked(c.k, c.layers, c.seed);
  else
    throw ParamError("unknown family '" + f + "'");
  std::ostringstream body;
  body << "# family " << f << " seed " << c.seed << '\n';
  write_graph(body, g);
  if (c.out.empty() || c.out == "-")
    std::cout << body.str();
  else
    write_text(c.out, body.str());
  return 0;
}

int cmd_inspect(const RunConfig& c) {
  bool is_sparsifier = has_map_lines(c.input);
  SparsifierFile file;
  if (is_sparsifier)
    file = read_sparsifier_file(c.input);
  else
    file.h = read_graph_file(c.input, false);
  const CapGraph& g = file.h;
  FlowParams fp = make_flow_params(std::max<long>(1, to_int64(ceil_div(g.terminal_capacity()))), param_options(c));
  print_header(c, c.mode, fp);
  json j;
  j["kind"] = is_sparsifier ? "sparsifier" : "graph";
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["k"] = g.k();
  j["steiner"] = steiner_count(g);
  j["integral"] = g.is_integral();
  j["terminal_capacity"] = to_string(g.terminal_capacity());
  Q cmax = 0, total = 0;
  for (const Edge& e : g.edges()) {
    cmax = std::max(cmax, e.cap);
    total += e.cap;
  }
  j["max_capacity"] = to_string(cmax);
  j["total_capacity"] = to_string(total);
  json td = json::array();
  for (VertexId t : g.terminals()) td.push_back(to_string(g.degree(t)));
  j["terminal_degrees"] = td;
  if (is_sparsifier) {
    json p = json::object();
    for (const auto& [k, v] : file.params) p[k] = v;
    j["params"] = p;
    std::vector<std::size_t> sizes;
    for (VertexId x = 0; x < g.num_vertices(); ++x)
      if (!g.is_terminal(x)) sizes.push_back(file.preimage[x].size());
    std::sort(sizes.rbegin(), sizes.rend());
    j["supernode_sizes"] = sizes;
    json ce = json::object();
    for (const auto& [i, eta] : file.cert_eta) ce[std::to_string(i)] = to_string(eta);
    j["router_eta"] = ce;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int report_error(const char* kind, const std::string& msg, int code) {
  json e = {{"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}};
  std::cout << e.dump() << '\n';
  std::cerr << "vsparse: " << msg << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Vertex cut and flow sparsifiers: build, verify, generate, inspect"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  // shared flags; VSPARSE_<NAME> fills any flag not given on the command line
  app.add_option("--mode", c.mode, "cut or flow")->envname("VSPARSE_MODE")->check(CLI::IsMember({"cut", "flow"}));
  app.add_option("--eps", c.eps, "capacitated mode: cut eps' in (0,1], flow eps in (0,1); omit for unit mode")
      ->envname("VSPARSE_EPS");
  app.add_option("--profile", c.profile, "flow constants: theoretical or aggressive")
      ->envname("VSPARSE_PROFILE")
      ->check(CLI::IsMember({"theoretical", "aggressive"}));
  app.add_option("--c-beta", c.c_beta, "flow-cut gap rule beta(k) = max(1, c_beta log2 k)")->envname("VSPARSE_C_BETA");
  app.add_option("--c-f", c.c_f, "aggressive F growth factor")->envname("VSPARSE_C_F");
  app.add_option("--r", c.r_override, "override r (0 = profile default)")->envname("VSPARSE_R");
  app.add_option("--seed", c.seed, "RNG seed for generation and sampling")->envname("VSPARSE_SEED");
  app.add_option("--budget-exp", c.budget_exp, "exact sparsest cut: max attachment vertices enumerated")
      ->envname("VSPARSE_BUDGET_EXP");
  app.add_option("--budget-enum", c.budget_enum, "exhaustive cut verification up to this many terminals")
      ->envname("VSPARSE_BUDGET_ENUM");
  app.add_option("--delta", c.delta, "LP tolerance")->envname("VSPARSE_DELTA");
  app.add_option("--workers", c.workers, "worker threads (0 = available parallelism)")->envname("VSPARSE_WORKERS");
  app.add_option("--out", c.out, "output path")->envname("VSPARSE_OUT");

  auto* build = app.add_subcommand("build", "build a sparsifier and its certificate file");
  build->add_option("input", c.input, "input graph")->required();
  build->add_flag("--dump-flows", c.dump_flows, "store router flows in the certificate file")
      ->envname("VSPARSE_DUMP_FLOWS");

  auto* verify = app.add_subcommand("verify", "check H against G; exit 1 on any violation");
  verify->add_option("graph", c.input, "input graph G")->required();
  verify->add_option("sparsifier", c.other, "sparsifier file or plain graph H")->required();
  verify->add_option("--claimed", c.claimed, "quality bound (default: the file's claimed_q)")
      ->envname("VSPARSE_CLAIMED");
  verify->add_option("--cut-samples", c.cut_samples, "random bipartitions past the enumeration budget")
      ->envname("VSPARSE_CUT_SAMPLES");
  verify->add_flag("--require-exhaustive", c.require_exhaustive, "refuse (exit 3) instead of sampling cuts")
      ->envname("VSPARSE_REQUIRE_EXHAUSTIVE");
  verify->add_option("--strategies", c.strategies, "uniform, matching, gravity, adversarial")
      ->envname("VSPARSE_STRATEGIES")
      ->delimiter(',');
  verify->add_option("--samples", c.flow_samples, "matchings drawn and adversarial restarts")
      ->envname("VSPARSE_SAMPLES");
  verify->add_option("--adversarial-steps", c.adversarial_steps, "local search steps per restart")
      ->envname("VSPARSE_ADVERSARIAL_STEPS");

  auto* gen = app.add_subcommand("gen", "write a seeded instance (stdout unless --out)");
  gen->add_option("family", c.family, "random-unit, random-cap, dumbbell, grid, regular, welllinked")
      ->required()
      ->check(CLI::IsMember({"random-unit", "random-cap", "dumbbell", "grid", "regular", "welllinked"}));
  gen->add_option("--n", c.n, "interior vertices (random-*, regular)")->envname("VSPARSE_N");
  gen->add_option("--m", c.m, "interior edges (random-*)")->envname("VSPARSE_M");
  gen->add_option("--k", c.k, "terminals")->envname("VSPARSE_K");
  gen->add_option("--deg", c.deg, "max terminal degree (random-*)")->envname("VSPARSE_DEG");
  gen->add_option("--side", c.side, "clique size (dumbbell)")->envname("VSPARSE_SIDE");
  gen->add_option("--rows", c.rows, "grid rows")->envname("VSPARSE_ROWS");
  gen->add_option("--cols", c.cols, "grid columns")->envname("VSPARSE_COLS");
  gen->add_option("--d", c.d, "degree (regular)")->envname("VSPARSE_D");
  gen->add_option("--layers", c.layers, "layers (welllinked)")->envname("VSPARSE_LAYERS");

  auto* inspect = app.add_subcommand("inspect", "summarize a graph or sparsifier file");
  inspect->add_option("file", c.input, "graph or sparsifier file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what(), 2);
  }

  try {
    if (*build) {
      c.command = "build";
      return cmd_build(c);
    }
    if (*verify) {
      c.command = "verify";
      return cmd_verify(c);
    }
    if (*gen) {
      c.command = "gen";
      return cmd_gen(c);
    }
    c.command = "inspect";
    return cmd_inspect(c);
  } catch (const ParseError& e) {
    return report_error("parse", e.what(), 2);
  } catch (const InputError& e) {
    return report_error("input", e.what(), 2);
  } catch (const BudgetRefusal& e) {
    return report_error("budget", e.what(), 3);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 1);
  }
}
