#include "spandist/exact.hpp"
#include "spandist/gadget.hpp"
#include "spandist/mds.hpp"
#include "spandist/ptas.hpp"
#include "spandist/spanner.hpp"
#include "spandist/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace spandist;
using nlohmann::json;

namespace {

// Usage and I/O problems exit 2; violated certificates or claims exit 1.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fraction(std::int64_t a, std::int64_t b) {
  if (b == 0) return "inf";
  std::int64_t g = std::gcd(a, b);
  if (g == 0) g = 1;
  return std::to_string(a / g) + "/" + std::to_string(b / g);
}

std::string fraction(const BigRational& r) {
  std::ostringstream s;
  s << numerator(r) << "/" << denominator(r);
  return s.str();
}

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("failed writing " + path);
}

void emit(const json& j, const std::string& path) {
  std::string text = j.dump(2) + "\n";
  if (path.empty())
    std::cout << text;
  else
    write_text(path, text);
}

Graph read_graph(const std::string& path) {
  try {
    return load_graph(path);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void add_trace_stats(json& j, const Trace& t) {
  auto a = audit(t, Graph());
  j["rounds"] = t.rounds;
  j["max_msg_bits"] = a.max_message_bits;
  j["total_bits"] = a.total_bits;
  j["messages"] = a.messages;
  j["digest"] = hex(t.digest);
}

struct RunArgs {
  std::string algo, input, variant, eps, stats, output;
  std::uint64_t seed = 1;
  std::uint32_t max_rounds = 0;
  unsigned threads = 1;
  int k = 2;
  bool oracle = false;
};

int run_spanner(const RunArgs& a, const Graph& g) {
  SpannerOptions opt;
  opt.variant = a.variant.empty() ? natural_variant(g) : parse_variant(a.variant);
  opt.seed = a.seed;
  opt.threads = a.threads;
  if (a.max_rounds) opt.max_rounds = a.max_rounds;
  auto res = two_spanner(g, opt);
  auto cert = certificate_check(g, res);
  json j{{"schema", 1}, {"command", "run"}, {"algo", "2spanner"}, {"variant", to_string(opt.variant)},
         {"seed", a.seed}, {"n", g.vertex_count()}, {"m", g.edge_count()}};
  j["spanner_size"] = res.h.count();
  j["spanner_cost"] = spanner_cost(g, res.h);
  j["cert_sum"] = fraction(cert.cost_sum);
  j["certificate_ok"] = cert.ok;
  j["valid"] = cert.valid_spanner;
  j["iterations"] = res.iterations;
  j["distinct_rho_max"] = cert.distinct_rho_max;
  j["uncoverable"] = res.uncoverable.size();
  if (!cert.ok) j["violations"] = cert.violations;
  add_trace_stats(j, res.trace);
  if (a.oracle) {
    auto best = min_spanner_exact(g, 2, opt.variant, {}, false, true);
    j["optimum"] = best.cost;
    j["ratio"] = fraction(spanner_cost(g, res.h), best.cost);
  }
  if (!a.output.empty()) write_text(a.output, json(res.h.ids()).dump() + "\n");
  emit(j, a.stats);
  return cert.ok && cert.valid_spanner ? 0 : 1;
}

int run_mds(const RunArgs& a, const Graph& g) {
  MdsOptions opt;
  opt.seed = a.seed;
  opt.threads = a.threads;
  if (a.max_rounds) opt.max_rounds = a.max_rounds;
  auto res = mds(g, opt);
  auto cert = mds_check(g, res);
  json j{{"schema", 1}, {"command", "run"}, {"algo", "mds"}, {"seed", a.seed},
         {"n", g.vertex_count()}, {"m", g.edge_count()}};
  j["dominating_size"] = res.dominating.size();
  j["cert_sum"] = fraction(cert.cost_sum);
  j["certificate_ok"] = cert.ok;
  j["valid"] = cert.dominating;
  j["iterations"] = res.iterations;
  j["distinct_rho_max"] = cert.distinct_rho_max;
  if (!cert.ok) j["violations"] = cert.violations;
  add_trace_stats(j, res.trace);
  if (a.oracle) {
    auto best = min_dominating_set_exact(g);
    j["optimum"] = best.size;
    j["ratio"] = fraction(static_cast<std::int64_t>(res.dominating.size()), static_cast<std::int64_t>(best.size));
  }
  if (!a.output.empty()) write_text(a.output, json(res.dominating).dump() + "\n");
  emit(j, a.stats);
  return cert.ok && cert.dominating ? 0 : 1;
}

int run_ptas(const RunArgs& a, const Graph& g) {
  PtasOptions opt;
  opt.k = a.k;
  opt.epsilon = a.eps.empty() ? Ratio(1) : Ratio::parse(a.eps);
  opt.seed = a.seed;
  opt.threads = a.threads;
  auto res = ptas_distributed(g, opt);
  auto dec = check_decomposition(g, res.decomposition);
  const auto mode = g.client_server() ? CoverMode::client_server : CoverMode::plain;
  auto ver = verify_spanner(g, res.run.h, a.k, mode);
  bool valid = ver.valid || (g.client_server() && ver.uncovered == res.run.uncoverable);
  json j{{"schema", 1}, {"command", "run"}, {"algo", "ptas"}, {"seed", a.seed}, {"k", a.k},
         {"epsilon", opt.epsilon.str()}, {"n", g.vertex_count()}, {"m", g.edge_count()}};
  j["spanner_size"] = res.run.h.count();
  j["spanner_cost"] = spanner_cost(g, res.run.h);
  j["valid"] = valid;
  j["ok"] = res.run.ok && dec.ok;
  j["power_radius"] = res.decomposition.r;
  j["colors"] = res.decomposition.colors;
  j["decomposition"] = to_json(dec);
  j["matches_sequential"] = res.matches_sequential;
  j["power_graph_rounds"] = res.decomposition.trace.rounds;
  j["base_rounds"] = res.base_rounds;
  j["digest"] = hex(res.decomposition.trace.digest);
  if (!res.run.ok) j["violations"] = res.run.violations;
  if (a.oracle) {
    auto best = min_spanner_exact(g, a.k, natural_variant(g), {}, false, true);
    j["optimum"] = best.cost;
    j["ratio"] = fraction(spanner_cost(g, res.run.h), best.cost);
  }
  if (!a.output.empty()) write_text(a.output, json(res.run.h.ids()).dump() + "\n");
  emit(j, a.stats);
  return res.run.ok && dec.ok && valid ? 0 : 1;
}

int do_run(const RunArgs& a, bool k_given) {
  if (a.algo != "ptas" && !a.eps.empty()) throw UsageError("--eps applies only to --algo ptas");
  if (a.algo != "ptas" && k_given) throw UsageError("--k applies only to --algo ptas");
  Graph g = read_graph(a.input);
  if (a.algo == "2spanner") return run_spanner(a, g);
  if (a.algo == "mds") {
    if (!a.variant.empty()) throw UsageError("--variant does not apply to mds");
    return run_mds(a, g);
  }
  return run_ptas(a, g);
}

struct GadgetArgs {
  int l = 1, beta = 1, k = 0;
  std::string a, b, out, meta, stats, input;
  bool verify = false, undirected = false, directed = false;
};

std::string meta_path(const GadgetArgs& g) { return g.meta.empty() ? g.out + ".json" : g.meta; }

int gadget_disjointness(const GadgetArgs& ga) {
  auto gd = gen_disjointness_gadget(ga.l, ga.beta, ga.a, ga.b);
  write_text(ga.out, format_graph(gd.graph));
  write_text(meta_path(ga), describe(gd).dump(2) + "\n");
  json j{{"schema", 1}, {"command", "gadget disjointness"}, {"graph", ga.out}, {"meta", meta_path(ga)},
         {"n", gd.graph.vertex_count()}, {"m", gd.graph.edge_count()}, {"d_edges", gd.d.count()},
         {"cut_edges", *audit(Trace{}, gd.graph, gd.partition).cut_edges}};
  bool ok = true;
  if (ga.verify) {
    auto rep = verify_gadget_claims(gd, ga.k);
    j["k"] = ga.k;
    j["claims"] = to_json(rep);
    ok = rep.ok;
  }
  emit(j, ga.stats);
  return ok ? 0 : 1;
}

int gadget_weighted(const GadgetArgs& ga) {
  auto gw = gen_weighted_gadget(ga.l, ga.k, !ga.undirected, ga.a, ga.b);
  write_text(ga.out, format_graph(gw.graph));
  write_text(meta_path(ga), describe(gw).dump(2) + "\n");
  json j{{"schema", 1}, {"command", "gadget weighted"}, {"graph", ga.out}, {"meta", meta_path(ga)},
         {"n", gw.graph.vertex_count()}, {"m", gw.graph.edge_count()}, {"directed", gw.directed}, {"k", ga.k}};
  bool ok = true;
  if (ga.verify) {
    auto rep = verify_weighted_gadget(gw);
    j["claims"] = to_json(rep);
    ok = rep.ok;
  }
  emit(j, ga.stats);
  return ok ? 0 : 1;
}

int gadget_mvc(const GadgetArgs& ga) {
  Graph g = read_graph(ga.input);
  auto r = gen_mvc_reduction(g, ga.directed);
  write_text(ga.out, format_graph(r.gs));
  write_text(meta_path(ga), describe(r).dump(2) + "\n");
  json j{{"schema", 1}, {"command", "gadget mvc"}, {"graph", ga.out}, {"meta", meta_path(ga)},
         {"n", r.gs.vertex_count()}, {"m", r.gs.edge_count()}, {"directed", r.directed}};
  bool ok = true;
  if (ga.verify) {
    auto mvc = min_vertex_cover_exact(g);
    Weight sp = r.directed ? min_cover_exact(r.gs, 2, r.gs.all_edges(), r.gs.all_edges(), true).cost
                           : min_spanner_reduction_instance(r.gs).cost;
    auto h = cover_to_spanner(r, mvc.witness);
    bool forward = verify_spanner(r.gs, h, 2).valid && spanner_cost(r.gs, h) == static_cast<Weight>(mvc.size);
    j["mvc"] = mvc.size;
    j["spanner_optimum"] = sp;
    j["forward_map_ok"] = forward;
    ok = forward && sp == static_cast<Weight>(mvc.size);
    j["equal"] = ok;
  }
  emit(j, ga.stats);
  return ok ? 0 : 1;
}

int do_oracle(const std::string& input, const std::string& problem, int k, const std::string& variant,
              const std::string& stats) {
  Graph g = read_graph(input);
  json j{{"schema", 1}, {"command", "oracle"}, {"problem", problem}, {"n", g.vertex_count()}, {"m", g.edge_count()}};
  if (problem == "spanner") {
    Variant v = variant.empty() ? natural_variant(g) : parse_variant(variant);
    auto r = min_spanner_exact(g, k, v, {}, true, true);
    j["k"] = k;
    j["variant"] = to_string(v);
    j["optimum"] = r.cost;
    j["witness"] = r.witness.ids();
    j["search_nodes"] = r.nodes;
  } else {
    auto r = problem == "mvc" ? min_vertex_cover_exact(g) : min_dominating_set_exact(g);
    j["optimum"] = r.size;
    j["witness"] = r.witness;
    j["search_nodes"] = r.nodes;
  }
  emit(j, stats);
  return 0;
}

Cut read_cut(const std::string& path, VertexId n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::vector<VertexId> side_b;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = json::parse(text);
    side_b = j.at("partition").at("V_B").get<std::vector<VertexId>>();
  } else {
    std::istringstream s(text);
    long long v;
    while (s >> v) side_b.push_back(static_cast<VertexId>(v));
    if (!s.eof()) throw UsageError(path + ": expected vertex ids");
  }
  std::sort(side_b.begin(), side_b.end());
  Cut c;
  c.side_b = side_b;
  for (VertexId v = 0; v < n; ++v)
    if (!std::binary_search(side_b.begin(), side_b.end(), v)) c.side_a.push_back(v);
  return c;
}

int do_audit(const std::string& input, const std::string& algo, std::uint64_t seed, const std::string& cut_path,
             const std::string& stats) {
  Graph g = read_graph(input);
  Trace trace;
  if (algo == "mds") {
    MdsOptions o;
    o.seed = seed;
    o.record_messages = true;
    trace = mds(g, o).trace;
  } else {
    SpannerOptions o;
    o.variant = natural_variant(g);
    o.seed = seed;
    o.record_messages = true;
    trace = two_spanner(g, o).trace;
  }
  std::optional<Cut> cut;
  if (!cut_path.empty()) cut = read_cut(cut_path, g.vertex_count());
  AuditReport rep;
  try {
    rep = audit(trace, g, cut);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json j{{"schema", 1}, {"command", "audit"}, {"algo", algo}, {"seed", seed}, {"n", g.vertex_count()}};
  j["audit"] = to_json(rep);
  j["digest"] = hex(trace.digest);
  const auto n = g.vertex_count();
  int log_n = 1;
  while ((1LL << log_n) < n) ++log_n;
  j["bits_per_log_n"] = fraction(rep.max_message_bits, log_n);
  emit(j, stats);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed spanner and dominating set algorithms, oracles and hardness gadgets"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run a distributed algorithm in the simulator");
  run->add_option("--algo", ra.algo, "2spanner, mds or ptas")->required()->check(CLI::IsMember({"2spanner", "mds", "ptas"}));
  run->add_option("--input", ra.input, "Graph file")->required();
  run->add_option("--variant", ra.variant, "undirected, directed, weighted or client_server (default: from the graph)");
  run->add_option("--seed", ra.seed, "Random seed");
  run->add_option("--max-rounds", ra.max_rounds, "Simulator round limit");
  run->add_option("--threads", ra.threads, "Worker threads for node steps");
  auto* k_opt = run->add_option("--k", ra.k, "Stretch (ptas only)")->check(CLI::PositiveNumber);
  run->add_option("--eps", ra.eps, "Epsilon as a decimal or p/q (ptas only)");
  run->add_flag("--oracle", ra.oracle, "Compare with the exact optimum");
  run->add_option("--stats", ra.stats, "Stats JSON path (default: stdout)");
  run->add_option("--output", ra.output, "Write the chosen edge or vertex ids as JSON");

  GadgetArgs ga;
  std::string out_d, out_w, out_m;
  int k_d = 5, k_w = 4;
  auto* gadget = app.add_subcommand("gadget", "Generate hardness gadgets");
  gadget->require_subcommand(1);
  auto* disj = gadget->add_subcommand("disjointness", "Set-disjointness graph G(l, beta)");
  disj->add_option("--l", ga.l)->required()->check(CLI::PositiveNumber);
  disj->add_option("--b", ga.beta, "Block size beta")->required()->check(CLI::PositiveNumber);
  disj->add_option("--a", ga.a, "Alice's l*l bits")->required();
  disj->add_option("--b-str", ga.b, "Bob's l*l bits")->required();
  disj->add_option("--k", k_d, "Stretch for --verify")->default_val(5);
  disj->add_flag("--verify", ga.verify);
  disj->add_option("--out", out_d)->default_val("disjointness.txt");
  disj->add_option("--meta", ga.meta, "Sidecar JSON (default: <out>.json)");
  disj->add_option("--stats", ga.stats);
  auto* wt = gadget->add_subcommand("weighted", "Weighted gadget G_w");
  wt->add_option("--l", ga.l)->required()->check(CLI::PositiveNumber);
  wt->add_option("--k", k_w)->default_val(4);
  wt->add_flag("--undirected", ga.undirected, "Path-lengthened undirected form");
  wt->add_option("--a", ga.a)->required();
  wt->add_option("--b-str", ga.b)->required();
  wt->add_flag("--verify", ga.verify);
  wt->add_option("--out", out_w)->default_val("weighted.txt");
  wt->add_option("--meta", ga.meta);
  wt->add_option("--stats", ga.stats);
  auto* mvc = gadget->add_subcommand("mvc", "Vertex cover to weighted 2-spanner reduction");
  mvc->add_option("--input", ga.input)->required();
  mvc->add_flag("--directed", ga.directed);
  mvc->add_flag("--verify", ga.verify, "Compare both optima with the oracles");
  mvc->add_option("--out", out_m)->default_val("reduction.txt");
  mvc->add_option("--meta", ga.meta);
  mvc->add_option("--stats", ga.stats);

  std::string o_input, o_problem = "spanner", o_variant, o_stats;
  int o_k = 2;
  auto* orc = app.add_subcommand("oracle", "Exact optimum by search");
  orc->add_option("--input", o_input)->required();
  orc->add_option("--problem", o_problem)->check(CLI::IsMember({"spanner", "mvc", "mds"}));
  orc->add_option("--k", o_k)->check(CLI::PositiveNumber);
  orc->add_option("--variant", o_variant);
  orc->add_option("--stats", o_stats);

  std::string a_input, a_algo = "2spanner", a_cut, a_stats;
  std::uint64_t a_seed = 1;
  auto* aud = app.add_subcommand("audit", "Message and cut bit accounting of a run");
  aud->add_option("--input", a_input)->required();
  aud->add_option("--algo", a_algo)->check(CLI::IsMember({"2spanner", "mds"}));
  aud->add_option("--seed", a_seed);
  aud->add_option("--cut", a_cut, "V_B ids, or a gadget sidecar JSON");
  aud->add_option("--stats", a_stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return do_run(ra, k_opt->count() > 0);
    if (*disj) {
      ga.out = out_d;
      ga.k = k_d;
      return gadget_disjointness(ga);
    }
    if (*wt) {
      ga.out = out_w;
      ga.k = k_w;
      return gadget_weighted(ga);
    }
    if (*mvc) {
      ga.out = out_m;
      return gadget_mvc(ga);
    }
    if (*orc) return do_oracle(o_input, o_problem, o_k, o_variant, o_stats);
    if (*aud) return do_audit(a_input, a_algo, a_seed, a_cut, a_stats);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
