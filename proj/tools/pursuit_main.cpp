#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/qp_oracle.hpp"
#include "pursuit/scenario_io.hpp"
#include "pursuit/svg_render.hpp"
#include "pursuit/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("PURSUIT_OUT_DIR")) return env;
  return ".";
}

pursuit::PursuitPolicy parse_policy(const std::string& name) {
  if (name == "oa-ecbvc") return pursuit::PursuitPolicy::OaEcbvc;
  if (name == "greedy") return pursuit::PursuitPolicy::Greedy;
  throw pursuit::InvalidScenario("policy must be 'oa-ecbvc' or 'greedy'");
}

void print_run_summary(const pursuit::SimResult& r) {
  std::cout << "outcome: " << pursuit::outcome_name(r.outcome) << "\n";
  std::cout << "t_e: " << (r.t_e ? num(*r.t_e) + " s" : std::string("-")) << "\n";
  std::cout << "t_c: " << (r.t_c ? num(*r.t_c) + " s" : std::string("-")) << "\n";
  std::cout << "d_mo: " << num(r.d_mo) << " m\n";
  std::cout << "d_mp: " << num(r.d_mp) << " m\n";
  std::cout << "violation_ticks: " << r.violation_ticks << "\n";
  std::cout << "safety_events: " << r.safety_events << "\n";
  std::cout << "ticks: " << r.trace.size() << "\n";
}

void print_batch_summary(const pursuit::BatchStats& b, const std::string& policy,
                         int obstacles) {
  std::cout << policy << " obstacles=" << obstacles << " trials=" << b.trials
            << " success_rate=" << num(b.success_rate)
            << " t_c_median=" << num(b.t_c_median) << " s"
            << " d_mo_mean=" << num(b.d_mo_mean) << " m"
            << " d_mp_mean=" << num(b.d_mp_mean) << " m"
            << " violation_ticks=" << b.violation_ticks << "\n";
}

int run_command(const std::string& scenario_path, long long seed_override,
                bool has_seed, bool render, const std::string& out_dir,
                const std::string& policy_name, int cells_tick) {
  pursuit::Scenario scenario = pursuit::load_scenario_file(scenario_path);
  if (has_seed) scenario.seed = static_cast<std::uint64_t>(seed_override);
  const pursuit::SimResult result =
      pursuit::run_simulation(scenario, parse_policy(policy_name));

  std::filesystem::create_directories(out_dir);
  const std::string stem =
      std::filesystem::path(scenario_path).stem().string() + "_seed" +
      std::to_string(scenario.seed);
  const std::string csv_path = out_dir + "/" + stem + ".csv";
  pursuit::emit_trace_csv(result, csv_path);
  std::cout << "trace: " << csv_path << "\n";
  if (render) {
    pursuit::RenderOptions opts;
    opts.show_hull = true;
    opts.cells_at_tick = cells_tick >= 0
                             ? cells_tick
                             : static_cast<int>(result.trace.size()) - 1;
    const std::string svg_path = out_dir + "/" + stem + ".svg";
    pursuit::render_svg_file(result, svg_path, opts);
    std::cout << "render: " << svg_path << "\n";
  }
  print_run_summary(result);
  return kExitOk;
}

int batch_command(const std::string& scenario_path, int trials,
                  const std::string& policy_name, int obstacles_override,
                  const std::vector<int>& sweep, const std::string& out_dir,
                  int threads) {
  pursuit::Scenario base = pursuit::load_scenario_file(scenario_path);

  std::vector<int> counts;
  if (!sweep.empty()) {
    counts = sweep;
  } else if (obstacles_override >= 0) {
    counts = {obstacles_override};
  } else {
    counts = {base.forest ? base.forest->obstacle_count
                          : static_cast<int>(base.obstacles.size())};
  }
  if ((obstacles_override >= 0 || !sweep.empty()) && !base.forest) {
    throw pursuit::InvalidScenario(
        "--obstacles/--sweep need a scenario with forest generation keys");
  }

  std::filesystem::create_directories(out_dir);
  const std::string stem = std::filesystem::path(scenario_path).stem().string();
  const std::string csv_path = out_dir + "/" + stem + "_batch.csv";
  std::string csv = pursuit::batch_csv_header();
  for (int count : counts) {
    pursuit::Scenario scenario = base;
    if (scenario.forest) scenario.forest->obstacle_count = count;
    const pursuit::BatchStats stats =
        pursuit::run_batch(scenario, trials, parse_policy(policy_name), threads);
    csv += pursuit::batch_csv_rows(stats, policy_name, count);
    print_batch_summary(stats, policy_name, count);
  }
  pursuit::write_text_file(csv_path, csv);
  std::cout << "batch: " << csv_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-pursuer pursuit-evasion simulator with obstacle-aware "
               "bounded Voronoi cells"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = default_out_dir();
  std::string policy = "oa-ecbvc";
  long long seed = 0;
  bool render = false;
  int cells_tick = -1;

  CLI::App* run = app.add_subcommand("run", "Run one simulation");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Seed override");
  run->add_flag("--render", render, "Write an SVG plot next to the CSV");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--policy", policy, "oa-ecbvc or greedy");
  run->add_option("--cells-at", cells_tick, "Tick for the cell overlay");

  int trials = 40;
  int obstacles_override = -1;
  std::vector<int> sweep;
  int threads = 1;
  CLI::App* batch = app.add_subcommand("batch", "Run a seeded batch study");
  batch->add_option("scenario", scenario_path, "Scenario file")->required();
  batch->add_option("--trials", trials, "Number of trials")->required();
  batch->add_option("--obstacles", obstacles_override,
                    "Override the forest obstacle count");
  batch->add_option("--sweep", sweep,
                    "Comma-separated obstacle counts to sweep")
      ->delimiter(',');
  batch->add_option("--policy", policy, "oa-ecbvc or greedy");
  batch->add_option("--out", out_dir, "Output directory");
  batch->add_option("--threads", threads, "Worker threads for trials");

  CLI::App* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("scenario", scenario_path, "Scenario file")->required();

  int fuzz_cases = 100;
  CLI::App* oracle = app.add_subcommand(
      "oracle-qp", "Check the separating QP against brute-force enumeration");
  oracle->add_option("--fuzz", fuzz_cases, "Number of fuzz cases");
  long long oracle_seed = 20240901;
  oracle->add_option("--seed", oracle_seed, "Fuzz seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(scenario_path, seed, seed_opt->count() > 0, render,
                         out_dir, policy, cells_tick);
    }
    if (batch->parsed()) {
      return batch_command(scenario_path, trials, policy, obstacles_override,
                           sweep, out_dir, threads);
    }
    if (validate->parsed()) {
      pursuit::Scenario s = pursuit::load_scenario_file(scenario_path);
      if (s.forest) {
        pursuit::generate_forest_scenario(s, s.seed);  // placement dry run
      }
      std::cout << "ok: " << scenario_path << " ("
                << (s.forest ? static_cast<std::size_t>(s.forest->pursuer_count)
                             : s.pursuer_starts.size())
                << " pursuers, "
                << (s.forest ? s.forest->obstacle_count
                             : static_cast<int>(s.obstacles.size()))
                << " obstacles)\n";
      return kExitOk;
    }
    if (oracle->parsed()) {
      const pursuit::QpFuzzReport report = pursuit::run_qp_fuzz(
          fuzz_cases, static_cast<std::uint64_t>(oracle_seed));
      std::printf("cases: %d\nmax_deviation: %.3e\nseparating: %s\n",
                  report.cases, report.max_deviation,
                  report.all_separating ? "yes" : "no");
      const bool ok = report.max_deviation <= 1e-6 && report.all_separating;
      std::cout << (ok ? "PASS" : "FAIL") << "\n";
      return ok ? kExitOk : kExitInternal;
    }
  } catch (const pursuit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const pursuit::InvalidScenario& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitValidation;
  } catch (const pursuit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
