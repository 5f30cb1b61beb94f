#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mpgdiag/generators.hpp"
#include "mpgdiag/runner.hpp"

using namespace mpgdiag;

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int fail_json(const std::string& code, const std::string& message) {
  std::cout << json{{"error", code}, {"message", message}}.dump(2) << "\n";
  return 1;
}

struct CsvRow {
  std::string instance;
  int64_t positions = 0, edges = 0;
  std::string mode;
  double wall_ms = 0;
  std::string status;
};

void print_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << "instance,positions,edges,mode,wall-ms,status\n";
  for (const auto& r : rows)
    out << r.instance << "," << r.positions << "," << r.edges << "," << r.mode << ","
        << r.wall_ms << "," << r.status << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compositional mean payoff game solver"};
  app.require_subcommand(1);

  // --- solve ---
  std::string solve_input, solve_semantics = "meager", solve_stats = "json", emit_flat;
  bool winners_only = false;
  int32_t leaf_limit = 20;
  auto* solve = app.add_subcommand("solve", "solve a string diagram of games");
  solve->add_option("input", solve_input, "diagram file ('-' for stdin)")->required();
  solve->add_option("--semantics", solve_semantics, "fat|meager (default meager)")
      ->check(CLI::IsMember({"fat", "meager"}));
  solve->add_flag("--winners-only", winners_only, "omit denotations from the output");
  solve->add_option("--leaf-limit", leaf_limit, "max positions per leaf (default 20)");
  solve->add_option("--emit-flat", emit_flat, "write the flattened game to this file");
  solve->add_option("--stats", solve_stats, "json (embedded) or csv (extra line on stderr)")
      ->check(CLI::IsMember({"json", "csv"}));

  // --- compare ---
  std::string cmp_input, cmp_oracle = "pm";
  int32_t cmp_leaf_limit = 20, cmp_brute_max = 14;
  int64_t cmp_pm_budget = 0;
  bool cmp_corrupt = false;
  auto* compare = app.add_subcommand("compare", "compositional vs monolithic oracle");
  compare->add_option("input", cmp_input, "closed diagram file ('-' for stdin)")->required();
  compare->add_option("--oracle", cmp_oracle, "brute|pm (default pm)")
      ->check(CLI::IsMember({"brute", "pm"}));
  compare->add_option("--leaf-limit", cmp_leaf_limit, "max positions per leaf");
  compare->add_option("--brute-max", cmp_brute_max, "brute force position cap");
  compare->add_option("--pm-budget", cmp_pm_budget,
                      "cap on progress-measure lifts (0 = unlimited)");
  compare->add_flag("--corrupt-compositional", cmp_corrupt,
                    "test hook: flip the compositional answer");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "benchmark generators");
  gen->require_subcommand(1);
  uint64_t seed = 1;
  std::string gen_out;
  int64_t wlo = -100000, whi = 100000;
  auto add_common = [&](CLI::App* g) {
    g->add_option("--seed", seed, "rng seed");
    g->add_option("-o,--out", gen_out, "output file (default stdout)");
    g->add_option("--weight-lo", wlo, "weight range lower bound");
    g->add_option("--weight-hi", whi, "weight range upper bound");
  };

  MiningOpts mining_opts;
  auto* gen_mining_cmd = gen->add_subcommand("mining", "stacked identical floors");
  add_common(gen_mining_cmd);
  gen_mining_cmd->add_option("--floors", mining_opts.floors, "number of floors");
  gen_mining_cmd->add_option("--floor-positions", mining_opts.floor_positions,
                             "positions per floor");
  gen_mining_cmd->add_option("--loop-arity", mining_opts.loop_arity, "wires between floors");

  LayeredOpts layered_opts;
  auto* gen_layered_cmd = gen->add_subcommand("layered", "randomly layered structures");
  add_common(gen_layered_cmd);
  gen_layered_cmd->add_option("--layers", layered_opts.layers, "number of layers");

  DrOpts dr_opts;
  auto* gen_dr_cmd = gen->add_subcommand("dr", "degree-of-repetition family");
  add_common(gen_dr_cmd);
  gen_dr_cmd->add_option("--dr", dr_opts.dr, "degree of repetition (divides --slots)");
  gen_dr_cmd->add_option("--slots", dr_opts.slots, "chain length");
  gen_dr_cmd->add_option("--width", dr_opts.width, "leaf interface width");

  ArityOpts arity_opts;
  auto* gen_arity_cmd = gen->add_subcommand("arity", "interface-width family");
  add_common(gen_arity_cmd);
  gen_arity_cmd->add_option("--arity", arity_opts.width, "leaf interface width");
  gen_arity_cmd->add_option("--slots", arity_opts.slots, "chain length");

  RandomClosedOpts closed_opts;
  auto* gen_closed_cmd = gen->add_subcommand("random-closed", "small closed diagrams");
  add_common(gen_closed_cmd);
  gen_closed_cmd->add_option("--max-positions", closed_opts.max_positions,
                             "flattened position cap");

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "benchmark runner");
  auto* bench_run = bench->add_subcommand("run", "run a seeded suite, CSV on stdout");
  std::string bench_family = "mining", bench_stats = "csv";
  int32_t bench_instances = 10;
  uint64_t bench_seed = 1;
  bool bench_compare = false;
  MiningOpts bench_mining;
  bench_run->add_option("--family", bench_family, "mining|layered|dr|arity")
      ->check(CLI::IsMember({"mining", "layered", "dr", "arity"}));
  bench_run->add_option("--instances", bench_instances, "instances to run");
  bench_run->add_option("--seed", bench_seed, "base seed");
  bench_run->add_option("--floors", bench_mining.floors, "mining floors");
  bench_run->add_option("--floor-positions", bench_mining.floor_positions, "mining positions");
  bench_run->add_option("--loop-arity", bench_mining.loop_arity, "mining loop wires");
  bench_run->add_option("--weight-lo", bench_mining.weight_lo, "weight range lower bound");
  bench_run->add_option("--weight-hi", bench_mining.weight_hi, "weight range upper bound");
  bench_run->add_flag("--with-oracle", bench_compare, "also time the pm oracle per instance");
  bench_run->add_option("--stats", bench_stats, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      SolveOptions opt;
      opt.semantics = solve_semantics == "fat" ? Semantics::Fat : Semantics::Meager;
      opt.winners_only = winners_only;
      opt.leaf_limit = leaf_limit;
      opt.emit_flat_path = emit_flat;
      json out = run_solve(read_file(solve_input), opt);
      std::cout << out.dump(2) << "\n";
      if (solve_stats == "csv") {
        std::cerr << solve_input << "," << out["stats"].value("flat_positions", 0) << ","
                  << out["stats"].value("flat_edges", 0) << ","
                  << out["semantics"].get<std::string>() << ","
                  << out["stats"]["wall_ms"].get<double>() << ",ok\n";
      }
      return 0;
    }
    if (*compare) {
      CompareOptions opt;
      opt.oracle = cmp_oracle == "brute" ? OracleKind::Brute : OracleKind::ProgressMeasure;
      opt.leaf_limit = cmp_leaf_limit;
      opt.brute_max_positions = cmp_brute_max;
      opt.pm_lift_budget = cmp_pm_budget;
      opt.corrupt_compositional = cmp_corrupt;
      try {
        std::cout << run_compare(read_file(cmp_input), opt).dump(2) << "\n";
      } catch (const DisagreementDetected& d) {
        std::cout << json{{"error", "DisagreementDetected"},
                          {"message", d.what()},
                          {"report", d.report}}
                         .dump(2)
                  << "\n";
        return 2;
      }
      return 0;
    }
    if (*gen) {
      std::string text;
      if (*gen_mining_cmd) {
        mining_opts.weight_lo = wlo;
        mining_opts.weight_hi = whi;
        text = gen_mining(seed, mining_opts);
      } else if (*gen_layered_cmd) {
        layered_opts.weight_lo = wlo;
        layered_opts.weight_hi = whi;
        text = gen_layered(seed, layered_opts);
      } else if (*gen_dr_cmd) {
        dr_opts.weight_lo = wlo;
        dr_opts.weight_hi = whi;
        text = gen_dr(seed, dr_opts);
      } else if (*gen_arity_cmd) {
        arity_opts.weight_lo = wlo;
        arity_opts.weight_hi = whi;
        text = gen_arity(seed, arity_opts);
      } else {
        closed_opts.weight_lo = wlo;
        closed_opts.weight_hi = whi;
        text = gen_random_closed(seed, closed_opts);
      }
      write_output(gen_out, text);
      return 0;
    }
    if (*bench_run) {
      std::vector<CsvRow> rows;
      json jrows = json::array();
      for (int32_t k = 0; k < bench_instances; ++k) {
        uint64_t s = bench_seed + static_cast<uint64_t>(k);
        std::string text;
        if (bench_family == "mining") {
          text = gen_mining(s, bench_mining);
        } else if (bench_family == "layered") {
          LayeredOpts o;
          o.weight_lo = bench_mining.weight_lo;
          o.weight_hi = bench_mining.weight_hi;
          text = gen_layered(s, o);
        } else if (bench_family == "dr") {
          DrOpts o;
          o.dr = 1 << (k % 5);  // sweep 1,2,4,8,16
          o.weight_lo = bench_mining.weight_lo;
          o.weight_hi = bench_mining.weight_hi;
          text = gen_dr(s, o);
        } else {
          ArityOpts o;
          o.width = 1 + (k % 5);
          o.weight_lo = bench_mining.weight_lo;
          o.weight_hi = bench_mining.weight_hi;
          text = gen_arity(s, o);
        }
        CsvRow row;
        row.instance = bench_family + "-" + std::to_string(s);
        if (bench_compare) {
          CompareOptions copt;
          copt.leaf_limit = 64;
          json rep = run_compare(text, copt);
          row.positions = rep["positions"].get<int64_t>();
          row.edges = rep["edges"].get<int64_t>();
          row.mode = "meager+pm";
          row.wall_ms = rep["compositional_ms"].get<double>() +
                        rep["oracle_ms"].get<double>();
          row.status = rep["agree"].get<bool>() ? "agree" : "disagree";
          jrows.push_back(rep);
        } else {
          SolveOptions sopt;
          sopt.leaf_limit = 64;
          sopt.winners_only = true;
          json out = run_solve(text, sopt);
          row.positions = out["stats"]["flat_positions"].get<int64_t>();
          row.edges = 0;  // only counted when the game is actually flattened
          row.mode = "meager";
          row.wall_ms = out["stats"]["wall_ms"].get<double>();
          row.status = out["results"][0]["status"].get<std::string>();
          jrows.push_back(std::move(out));
        }
        rows.push_back(std::move(row));
      }
      if (bench_stats == "csv")
        print_csv(std::cout, rows);
      else
        std::cout << jrows.dump(2) << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    return fail_json("SyntaxError", e.what());
  } catch (const ArityError& e) {
    return fail_json("ArityError", e.what());
  } catch (const GameError& e) {
    return fail_json("GameError", e.what());
  } catch (const GameTooLargeForBruteForce& e) {
    return fail_json("GameTooLargeForBruteForce", e.what());
  } catch (const PmBudgetExceeded& e) {
    return fail_json("PmBudgetExceeded", e.what());
  } catch (const std::exception& e) {
    return fail_json("Error", e.what());
  }
  return 0;
}
