// Command-line front end: condensation graphs, sequence search and
// verification, schedule simulation, detector and error reports, and
// brute-force code parameters.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dacodes/condense.hpp"
#include "dacodes/detect.hpp"
#include "dacodes/distance.hpp"
#include "dacodes/fixtures.hpp"
#include "dacodes/parallel.hpp"
#include "dacodes/runner.hpp"

using json = nlohmann::json;
using namespace dacodes;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitInternal = 3;

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f.good()) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  f << j.dump(2) << "\n";
}

// `builtin:<name>` or a lattice file path.
LatticeSpec resolve_lattice(const std::string& source, Fixture* fixture_out) {
  if (source.rfind("builtin:", 0) == 0) {
    Fixture fx = builtin_fixture(source.substr(8));
    if (fixture_out) *fixture_out = fx;
    return fixture_out ? fixture_out->lattice : fx.lattice;
  }
  LatticeSpec spec = load_lattice(slurp(source));
  return apply_identifications(spec);
}

ScheduleSpec resolve_schedule(const Fixture& fx, const std::string& name) {
  auto it = fx.schedules.find(name);
  if (it != fx.schedules.end()) return it->second;
  return load_schedule(slurp(name));
}

CondensationGraph make_graph(const AnyonTheory& th, bool da) {
  return build_graph(th, da ? da_vertices(th) : single_cc_vertices(th), canonical_cc_sections);
}

int cmd_graph(const std::string& parent, const std::string& dot_path,
              const std::string& json_path) {
  bool da = parent == "cc2";
  if (!da && parent != "cc") {
    std::cerr << "graph: parent must be cc or cc2\n";
    return kExitUsage;
  }
  AnyonTheory th = da ? bilayer_color_code_theory() : color_code_theory();
  auto graph = make_graph(th, da);
  if (!dot_path.empty()) {
    std::ofstream f(dot_path);
    f << graph.to_dot();
  }
  int base_degree = -1;
  if (da) base_degree = graph.degree(*graph.find_vertex(vzz_condensation(th)));
  std::cout << "vertices " << graph.num_vertices() << "\nedges " << graph.num_edges() << "\n";
  if (da) std::cout << "interlayer vertex degree " << base_degree << "\n";
  json j{{"vertices", graph.num_vertices()}, {"edges", graph.num_edges()}};
  if (da) j["interlayer_degree"] = base_degree;
  emit(j, json_path);
  return 0;
}

int cmd_search(size_t max_len, bool allow_xy_unfold, bool interior_base,
               const std::string& json_path, int jobs) {
  AnyonTheory th = bilayer_color_code_theory();
  auto graph = make_graph(th, true);
  int base = *graph.find_vertex(vzz_condensation(th));
  SearchOptions opts;
  opts.max_len = max_len;
  opts.interior_base_allowed = interior_base;
  opts.n_threads = jobs;
  if (!allow_xy_unfold) opts.edge_excluded = tabulated_unfold_filter(graph, base);
  auto found = search_sequences(graph, base, opts);

  std::map<size_t, int> by_len;
  json rows = json::array();
  for (const auto& [m, w] : found) {
    AutomorphismName n = classify_automorphism(m);
    if (!n.is_identity()) by_len[w.min_length]++;
    json row{{"automorphism", n.to_string()}, {"min_length", w.min_length}};
    json walk = json::array();
    for (int v : w.example) walk.push_back(graph.vertex(v).label);
    row["example"] = walk;
    rows.push_back(row);
    std::cout << n.to_string() << "  len " << w.min_length << "\n";
  }
  std::cout << "automorphisms " << found.size() << "\n";
  for (auto& [len, cnt] : by_len) std::cout << "first at length " << len << ": " << cnt << "\n";
  json j{{"automorphisms", rows}};
  for (auto& [len, cnt] : by_len) j["count_at_length"][std::to_string(len)] = cnt;
  emit(j, json_path);
  return 0;
}

int cmd_verify_seq(const std::string& path, const std::string& json_path) {
  AnyonTheory th = bilayer_color_code_theory();
  Subspace vzz = vzz_condensation(th);
  ChildTheory base(th, vzz, *canonical_cc_sections(th, vzz));
  std::string text = slurp(path);
  std::vector<CatalogEntry> entries;
  if (text.find("seq ") != std::string::npos) {
    entries = load_catalog(text, th);
  } else {
    entries.push_back({path, load_sequence(text, th), std::nullopt});
  }
  bool all_ok = true;
  json rows = json::array();
  for (const auto& e : entries) {
    json row{{"name", e.name}, {"rounds", e.rounds.size() == 0 ? 0 : e.rounds.size() - 1}};
    try {
      FpMat aut = sequence_automorphism(th, e.rounds, base);
      std::string aname = classify_automorphism(aut).to_string();
      row["automorphism"] = aname;
      if (e.expected_images) {
        bool ok = matches_images(aut, *e.expected_images);
        row["matches_expected"] = ok;
        all_ok = all_ok && ok;
      }
      std::cout << e.name << ": " << aname
                << (e.expected_images ? (row["matches_expected"].get<bool>() ? "  (expected ok)"
                                                                             : "  (MISMATCH)")
                                      : "")
                << "\n";
    } catch (const Error& err) {
      row["error"] = err.what();
      std::cout << e.name << ": error " << err.what() << "\n";
      all_ok = false;
    }
    rows.push_back(row);
  }
  emit(json{{"sequences", rows}, {"ok", all_ok}}, json_path);
  return all_ok ? 0 : kExitVerification;
}

RunOptions run_options_for(const Fixture& fx, const std::string& start, bool track) {
  RunOptions opts;
  if (start == "reference") {
    if (fx.reference_group.empty())
      throw Error("fixture has no reference group; use --start vacuum");
    opts.start = StartPolicy::ReferenceISG;
    opts.reference_group = fx.reference_group;
    if (track) {
      if (fx.reference_frame) {
        opts.initial_frame = fx.reference_frame;
      } else {
        StabilizerState st(fx.lattice.num_qubits());
        for (const auto& g : fx.reference_group) st.seed_generator(g);
        opts.initial_frame = derive_frame(st);
      }
    }
  }
  return opts;
}

int cmd_run(const std::string& fixture, const std::string& schedule, const std::string& start,
            const std::string& json_path) {
  Fixture fx;
  resolve_lattice(fixture, &fx);
  ScheduleSpec sched = resolve_schedule(fx, schedule);
  RunOptions opts = run_options_for(fx, start, start == "reference");
  RunResult run;
  try {
    run = run_schedule(fx.lattice, sched, opts);
  } catch (const LogicalLoss& e) {
    std::cerr << "logical loss: " << e.what() << "\n";
    return kExitVerification;
  }
  json j;
  j["rounds"] = sched.rounds.size();
  j["rank_after"] = run.rank_after;
  std::optional<size_t> full_round;
  if (!fx.reference_group.empty()) {
    // First round (1-based) whose ISG rank reaches the topological value.
    StabilizerState ref(fx.lattice.num_qubits());
    for (const auto& g : fx.reference_group) ref.seed_generator(g);
    for (size_t t = 0; t < run.rank_after.size() && !full_round; ++t)
      if (run.rank_after[t] == ref.rank()) full_round = t + 1;
  }
  std::cout << "rank trace:";
  for (size_t r : run.rank_after) std::cout << " " << r;
  std::cout << "\n";
  if (full_round) {
    std::cout << "full topological group after round " << *full_round << "\n";
    j["full_group_round"] = *full_round;
  }
  if (opts.initial_frame) {
    FpMat action = logical_action(*opts.initial_frame, run.frame_after.back(), run.state);
    auto name = fx.name.rfind("torus", 0) == 0 ? torus_gate_name(action) : std::nullopt;
    std::ostringstream mat;
    mat << action.to_string();
    j["logical_action"] = mat.str();
    if (name) {
      std::cout << "logical gate: " << *name << "\n";
      j["gate"] = *name;
    }
  }
  emit(j, json_path);
  return 0;
}

json detector_report(const DetectorSet& dets, const RunResult& run) {
  json rows = json::array();
  for (const auto& d : dets.detectors) {
    json row;
    row["outcomes"] = d.outcomes.ones();
    row["value"] = d.value;
    row["color"] = d.color ? std::string(1, color_char(*d.color)) : "mixed";
    row["layer_flavors"] = d.layer_flavors;
    row["first_round"] = d.first_round;
    row["last_round"] = d.last_round;
    rows.push_back(row);
  }
  json excluded = json::array();
  for (size_t k = 0; k < dets.outcome_excluded.size(); ++k)
    if (dets.outcome_excluded[k]) excluded.push_back(k);
  return json{{"detectors", rows},
              {"n_outcomes", run.state.num_outcomes()},
              {"excluded_outcomes", excluded}};
}

int cmd_detectors(const std::string& fixture, const std::string& schedule, int periods,
                  const std::string& start, const std::string& json_path) {
  Fixture fx;
  resolve_lattice(fixture, &fx);
  ScheduleSpec block = resolve_schedule(fx, schedule);
  std::vector<ScheduleSpec> blocks(std::max(1, periods), block);
  ScheduleSpec sched = ScheduleSpec::concatenate(blocks);
  RunOptions opts = run_options_for(fx, start, false);
  RunResult run = run_schedule(fx.lattice, sched, opts);
  DetectorSet dets = extract_detectors(run, fx.lattice);
  std::cout << "detectors " << dets.detectors.size() << " over " << run.state.num_outcomes()
            << " outcomes\n";
  std::map<std::string, int> per_color;
  for (const auto& d : dets.detectors)
    per_color[d.color ? std::string(1, color_char(*d.color)) : "mixed"]++;
  for (auto& [c, n] : per_color) std::cout << "  " << c << ": " << n << "\n";
  emit(detector_report(dets, run), json_path);
  return 0;
}

int cmd_check_errors(const std::string& fixture, const std::string& schedule,
                     const std::string& json_path, int jobs) {
  Fixture fx;
  resolve_lattice(fixture, &fx);
  if (fx.schedules.find("padding") == fx.schedules.end())
    throw Error("check-errors expects a fixture with a padding schedule");
  ScheduleSpec pad = fx.schedules.at("padding");
  ScheduleSpec block = resolve_schedule(fx, schedule);
  ScheduleSpec full = ScheduleSpec::concatenate({pad, block, pad});
  size_t margin = pad.rounds.size() - 1;
  size_t window_end = margin + block.rounds.size() - 1;

  RunOptions opts = run_options_for(fx, "reference", true);
  RunResult run = run_schedule(fx.lattice, full, opts);
  DetectorSet dets = extract_detectors(run, fx.lattice);
  auto mem = membranes(run);
  (void)jobs;
  auto rep = verify_correctability(dets, run, fx.lattice, mem, margin, window_end);
  std::cout << rep.violations.size() << " violations over " << rep.n_columns
            << " error columns (" << rep.n_classes << " syndrome classes)\n";
  json vio = json::array();
  for (const auto& v : rep.violations) {
    json chain = json::array();
    for (const auto& loc : v.chain)
      chain.push_back(json{{"qubit", loc.qubit},
                           {"after_round", loc.round},
                           {"flavor", std::string(1, flavor_char(loc.flavor))}});
    vio.push_back(json{{"chain", chain}, {"reason", v.reason}});
  }
  emit(json{{"violations", vio},
            {"n_columns", rep.n_columns},
            {"n_classes", rep.n_classes},
            {"detectors", dets.detectors.size()}},
       json_path);
  return rep.violations.empty() ? 0 : kExitVerification;
}

int cmd_distance(const std::string& fixture, const std::string& schedule, int w_max,
                 const std::string& json_path, int jobs) {
  Fixture fx;
  resolve_lattice(fixture, &fx);
  StabilizerState st(fx.lattice.num_qubits());
  if (!schedule.empty()) {
    ScheduleSpec block = resolve_schedule(fx, schedule);
    std::vector<ScheduleSpec> blocks(4, block);
    RunResult run = run_schedule(fx.lattice, ScheduleSpec::concatenate(blocks), RunOptions{});
    size_t ref = block.reference_round.value_or(block.rounds.size() - 1);
    size_t slice = run.isg_after.size() - (block.rounds.size() - 1) + ref - 1;
    for (const auto& g : run.isg_after[std::min(slice, run.isg_after.size() - 1)])
      st.seed_generator(g);
  } else if (!fx.reference_group.empty()) {
    for (const auto& g : fx.reference_group) st.seed_generator(g);
  } else {
    throw Error("distance: need --schedule or a fixture with a reference group");
  }
  auto live = fx.lattice.live_qubits();
  size_t n = live.size();
  size_t k = fx.lattice.num_qubits() - st.rank();
  auto d = code_distance(st, w_max, live, jobs);
  std::cout << "[[" << n << "," << k << ","
            << (d.distance ? std::to_string(*d.distance) : (">" + std::to_string(w_max)))
            << "]]\n";
  json j{{"n", n}, {"k", k}};
  if (d.distance) {
    j["d"] = *d.distance;
    j["witness"] = d.witness.to_string();
  } else {
    j["d_exceeds"] = w_max;
  }
  emit(j, json_path);
  return 0;
}

int cmd_fixtures(const std::string& json_path) {
  json rows = json::array();
  for (const auto& name : builtin_fixture_names()) {
    std::cout << name;
    try {
      Fixture fx = builtin_fixture(name);
      std::cout << "  (" << fx.lattice.num_qubits() << " qubits; schedules:";
      json scheds = json::array();
      for (const auto& [sname, s] : fx.schedules) {
        std::cout << " " << sname;
        scheds.push_back(sname);
      }
      std::cout << ")";
      rows.push_back(json{{"name", name},
                          {"qubits", fx.lattice.num_qubits()},
                          {"schedules", scheds}});
    } catch (const Error& e) {
      std::cout << "  (unavailable: " << e.what() << ")";
    }
    std::cout << "\n";
  }
  emit(json{{"fixtures", rows}}, json_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic automorphism color-code verification engine"};
  app.require_subcommand(1);
  std::string json_path;
  int jobs = 0;
  app.add_option("--json", json_path, "write a JSON report to this path");
  app.add_option("--jobs", jobs, "worker threads (default: DACODES_JOBS or all cores)");

  std::string parent = "cc2", dot_path;
  auto* graph = app.add_subcommand("graph", "build a condensation graph");
  graph->add_option("parent", parent, "cc or cc2");
  graph->add_option("--dot", dot_path, "write DOT output here");

  size_t max_len = 5;
  bool allow_xy = false, interior_base = false;
  auto* search = app.add_subcommand("search", "exhaustive closed-walk automorphism search");
  search->add_option("--max-len", max_len, "maximum walk length");
  search->add_flag("--allow-xy-unfold", allow_xy,
                   "include the (X1,Y2)-patterned unfolding steps the tables omit");
  search->add_flag("--interior-base", interior_base, "allow walks to revisit the base");

  std::string seq_path;
  auto* verify = app.add_subcommand("verify-seq", "compute automorphisms of sequence files");
  verify->add_option("file", seq_path, "sequence or catalog file")->required();

  std::string fixture = "builtin:torus36", schedule, start = "reference";
  auto* run = app.add_subcommand("run", "simulate a schedule and report the ISG trace");
  run->add_option("fixture", fixture, "builtin:<name> or lattice file");
  run->add_option("--schedule", schedule, "schedule name or file")->required();
  run->add_option("--start", start, "vacuum or reference");

  int periods = 3;
  auto* dets = app.add_subcommand("detectors", "extract the detector basis");
  dets->add_option("fixture", fixture, "builtin:<name> or lattice file");
  dets->add_option("--schedule", schedule, "schedule name or file")->required();
  dets->add_option("--periods", periods, "repetitions of the schedule");
  dets->add_option("--start", start, "vacuum or reference");

  auto* check = app.add_subcommand("check-errors", "single-error correctability report");
  check->add_option("fixture", fixture, "builtin:<name> or lattice file");
  check->add_option("--schedule", schedule, "schedule name or file")->required();

  int w_max = 4;
  auto* dist = app.add_subcommand("distance", "brute-force [[n,k,d]] parameters");
  dist->add_option("fixture", fixture, "builtin:<name> or lattice file");
  dist->add_option("--schedule", schedule, "schedule establishing the reference slice");
  dist->add_option("--wmax", w_max, "largest weight to search");

  auto* fixtures = app.add_subcommand("fixtures", "fixture catalog");
  fixtures->add_subcommand("list", "list builtin fixtures");

  CLI11_PARSE(app, argc, argv);
  try {
    if (graph->parsed()) return cmd_graph(parent, dot_path, json_path);
    if (search->parsed()) return cmd_search(max_len, allow_xy, interior_base, json_path, jobs);
    if (verify->parsed()) return cmd_verify_seq(seq_path, json_path);
    if (run->parsed()) return cmd_run(fixture, schedule, start, json_path);
    if (dets->parsed()) return cmd_detectors(fixture, schedule, periods, start, json_path);
    if (check->parsed()) return cmd_check_errors(fixture, schedule, json_path, jobs);
    if (dist->parsed()) return cmd_distance(fixture, schedule, w_max, json_path, jobs);
    if (fixtures->parsed()) return cmd_fixtures(json_path);
  } catch (const InternalError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
