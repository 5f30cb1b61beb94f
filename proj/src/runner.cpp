#include "mpgdiag/runner.hpp"

#include <chrono>
#include <fstream>

#include "mpgdiag/flatten.hpp"

namespace mpgdiag {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json object_json(const ObjectPair& o) {
  return json{{"left", {o.dom.right, o.dom.left}}, {"right", {o.cod.right, o.cod.left}}};
}

json denotation_json(const std::vector<std::vector<PlayArrow>>& val, int32_t entrance) {
  json sets = json::array();
  for (const auto& inner : project_entrance(val, entrance)) {
    json s = json::array();
    for (const auto& v : inner) s.push_back(tvalue_json(v));
    sets.push_back(std::move(s));
  }
  return sets;
}

json results_json(const std::vector<std::vector<PlayArrow>>& val, int32_t entrances,
                  bool winners_only) {
  json results = json::array();
  for (int32_t i = 0; i < entrances; ++i) {
    json r{{"entrance", i + 1}, {"status", status_name(classify_entrance(val, i))}};
    if (!winners_only) r["denotation"] = denotation_json(val, i);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace

json tvalue_json(const TValue& v) {
  switch (v.kind) {
    case TValue::Kind::WinE:
      return "winE";
    case TValue::Kind::WinA:
      return "winA";
    case TValue::Kind::Exit:
      return json{{"exit", v.exit + 1}};
    case TValue::Kind::WExit:
      return json{{"wexit", {to_int64(numerator(v.weight)), to_int64(denominator(v.weight)),
                             v.exit + 1}}};
  }
  return nullptr;
}

// Exact position count of the flattened game: no operation ever drops
// or merges positions, so it is additive over the dag with sharing
// multiplied out.
static int64_t flattened_position_count(const SharedDag& dag) {
  std::vector<int64_t> count(dag.nodes.size(), 0);
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    const DagNode& n = dag.nodes[i];
    switch (n.kind) {
      case Term::Kind::Leaf: count[i] = n.game->num_positions(); break;
      case Term::Kind::Const: count[i] = 0; break;
      case Term::Kind::Seq:
      case Term::Kind::Sum: count[i] = count[n.a] + count[n.b]; break;
      case Term::Kind::Trace: count[i] = count[n.a]; break;
      default: break;
    }
  }
  return count[dag.root];
}

json run_solve(const std::string& source, const SolveOptions& opt) {
  auto t0 = Clock::now();
  TermPtr term = parse_diagram(source);
  SharedDag dag = resolve_sharing(term);
  double parse_ms = ms_since(t0);

  LeafLimits limits{opt.leaf_limit};
  EvalStats stats;
  auto t1 = Clock::now();
  ObjectPair object = dag.nodes[dag.root].arity;
  const int32_t entrances = object.dom.right + object.cod.left;

  json results;
  if (opt.semantics == Semantics::Fat) {
    IntArrow<FatDen> arrow = evaluate_fat(dag, limits, &stats);
    results = results_json(arrow.den.val, entrances, opt.winners_only);
  } else {
    IntArrow<MeagerDen> arrow = evaluate_meager(dag, limits, &stats);
    results = results_json(arrow.den.val, entrances, opt.winners_only);
  }
  double eval_ms = ms_since(t1);

  json out{
      {"object", object_json(object)},
      {"semantics", opt.semantics == Semantics::Fat ? "fat" : "meager"},
      {"results", std::move(results)},
      {"stats",
       {{"wall_ms", ms_since(t0)},
        {"parse_ms", parse_ms},
        {"eval_ms", eval_ms},
        {"dag_nodes", dag.nodes.size()},
        {"leaf_evals", stats.leaf_evals},
        {"max_outer", stats.max_outer},
        {"max_inner", stats.max_inner},
        {"flat_positions", flattened_position_count(dag)}}},
  };

  if (!opt.emit_flat_path.empty()) {
    OpenGame flat = flatten(dag);
    std::ofstream f(opt.emit_flat_path);
    if (!f) throw std::runtime_error("cannot write " + opt.emit_flat_path);
    f << emit_leaf_syntax(flat);
    out["stats"]["flat_positions"] = flat.num_positions();
    out["stats"]["flat_edges"] = flat.num_edges();
  }
  return out;
}

json run_compare(const std::string& source, const CompareOptions& opt) {
  TermPtr term = parse_diagram(source);
  SharedDag dag = resolve_sharing(term);
  ObjectPair object = dag.nodes[dag.root].arity;
  const int32_t entrances = object.dom.right + object.cod.left;
  if (object.cod.right + object.dom.left != 0)
    throw std::invalid_argument("compare needs a closed diagram (no exits)");

  LeafLimits limits{opt.leaf_limit};
  auto t0 = Clock::now();
  IntArrow<MeagerDen> arrow = evaluate_meager(dag, limits);
  std::vector<Status> comp;
  for (int32_t i = 0; i < entrances; ++i) comp.push_back(classify_entrance(arrow.den.val, i));
  double comp_ms = ms_since(t0);

  auto t1 = Clock::now();
  OpenGame flat = flatten(dag);
  double flatten_ms = ms_since(t1);

  auto t2 = Clock::now();
  std::vector<Winner> oracle;
  PmStats pm_stats;
  if (opt.oracle == OracleKind::Brute) {
    OracleLimits olim{opt.brute_max_positions};
    for (int32_t i = 0; i < entrances; ++i)
      oracle.push_back(brute_force_solve(flat, i, olim));
  } else {
    oracle = progress_measure_solve(flat, &pm_stats, opt.pm_lift_budget);
  }
  double oracle_ms = ms_since(t2);

  if (opt.corrupt_compositional)
    for (auto& s : comp) s = s == Status::Winning ? Status::Losing : Status::Winning;

  json entries = json::array();
  bool agree = true;
  for (int32_t i = 0; i < entrances; ++i) {
    const char* oracle_status =
        oracle[i] == Winner::Winning ? status_name(Status::Winning) : status_name(Status::Losing);
    bool ok = status_name(comp[i]) == std::string(oracle_status);
    agree &= ok;
    entries.push_back({{"entrance", i + 1},
                       {"compositional", status_name(comp[i])},
                       {"oracle", oracle_status}});
  }
  json report{{"agree", agree},
              {"entrances", std::move(entries)},
              {"compositional_ms", comp_ms},
              {"flatten_ms", flatten_ms},
              {"oracle_ms", oracle_ms},
              {"oracle", opt.oracle == OracleKind::Brute ? "brute" : "pm"},
              {"positions", flat.num_positions()},
              {"edges", flat.num_edges()}};
  if (opt.oracle == OracleKind::ProgressMeasure)
    report["oracle_stats"] = {{"weight_scale", pm_stats.weight_scale},
                              {"lifts", pm_stats.lifts},
                              {"top", pm_stats.top}};
  if (!agree)
    throw DisagreementDetected("compositional and oracle classifications differ", report);
  return report;
}

}  // namespace mpgdiag
