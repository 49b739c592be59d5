#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tentctl/cli_commands.hpp"
#include "tentctl/manifest.hpp"

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

// Writes the buffered primary output to stdout or --out, with a manifest
// beside every file output.
int deliver(int code, const std::string& command, const Params& params,
            const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return code;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << out_path << " (--out)\n";
    return 2;
  }
  f << payload;
  f.close();
  tentctl::RunManifest manifest;
  manifest.command = command;
  manifest.parameters = params;
  manifest.output_digest = tentctl::fnv1a_hex(payload);
  tentctl::write_manifest(manifest, out_path + ".manifest.json");
  return code;
}

int env_precision() {
  const char* v = std::getenv("TENTCTL_PRECISION");
  if (!v) return 0;
  return std::atoi(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic orbits of the generalized tent map: exact enumeration, "
               "predictive-control search, and Cantor-set statistics"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write primary output to this file (plus manifest)");

  // ---- count ----
  tentctl::cli::CountOptions count_opt;
  auto* count = app.add_subcommand("count", "number of distinct proper T-cycles");
  count->add_option("--period", count_opt.period, "cycle length T")->required();

  // ---- enumerate ----
  tentctl::cli::EnumerateOptions enum_opt;
  auto* enumerate = app.add_subcommand("enumerate", "all T-cycles as exact rationals");
  enumerate->add_option("--H", enum_opt.H, "tent map slope (rational)");
  enumerate->add_option("--period", enum_opt.period, "cycle length T")->required();

  // ---- find ----
  tentctl::cli::FindOptions find_opt;
  std::string find_offset, find_theta, find_seed, find_threshold, find_trace;
  auto* find = app.add_subcommand("find", "stabilize and locate cycles numerically");
  find->add_option("--H", find_opt.H, "tent map slope (rational)");
  find->add_option("--period", find_opt.period, "target period T")->required();
  find->add_option("--regime", find_opt.regime, "multiplier sign to stabilize: pos|neg");
  find->add_option("--offset", find_offset, "interior offset c in (-1,1)");
  find->add_option("--theta", find_theta, "control parameter as exact rational");
  find->add_option("--seed-value", find_seed, "single seed x0 (decimal/rational)");
  find->add_option("--grid", find_opt.grid, "grid size when no --seed-value");
  find->add_option("--precision", find_opt.precision, "significant decimal digits");
  find->add_option("--threshold", find_threshold, "residual checkpoint level");
  find->add_option("--max-iters", find_opt.max_iters, "iteration budget per seed");
  find->add_flag("--force", find_opt.force, "proceed with theta outside both regimes");
  find->add_option("--trace", find_trace, "write per-step CSV (n,x_n,U_n,Uhat_n)");
  find->add_option("--range-lo", find_opt.range_lo, "grid range lower end");
  find->add_option("--range-hi", find_opt.range_hi, "grid range upper end");

  // ---- graph ----
  tentctl::cli::GraphOptions graph_opt;
  auto* graph = app.add_subcommand("graph", "CSV of x, f, f^T, zeta, F over [0,1]");
  graph->add_option("--H", graph_opt.H, "tent map slope (rational)");
  graph->add_option("--period", graph_opt.period, "period T used in zeta")->required();
  graph->add_option("--theta", graph_opt.theta, "control parameter (rational)")->required();
  graph->add_option("--samples", graph_opt.samples, "number of grid samples");
  graph->add_option("--precision", graph_opt.precision, "output digits");

  // ---- cantor ----
  tentctl::cli::CantorOptions cantor_opt;
  std::string cantor_off_pos, cantor_off_neg;
  auto* cantor = app.add_subcommand("cantor", "histogram CSV of point distributions");
  cantor->add_option("--mode", cantor_opt.mode, "cycles | first-type")->required();
  cantor->add_option("--H", cantor_opt.H, "tent map slope (rational)");
  cantor->add_option("--period", cantor_opt.period, "cycle length T (cycles mode)");
  cantor->add_option("--bins", cantor_opt.bins, "histogram bins");
  cantor->add_option("--source", cantor_opt.source, "cycles mode: oracle | finder");
  cantor->add_option("--offset-pos", cantor_off_pos, "finder offset, positive regime");
  cantor->add_option("--offset-neg", cantor_off_neg, "finder offset, negative regime");
  cantor->add_option("--grid", cantor_opt.grid, "finder grid size");
  cantor->add_option("--precision", cantor_opt.precision, "finder precision");
  cantor->add_option("--depth", cantor_opt.depth, "first-type expansion depth N");
  cantor->add_option("--count", cantor_opt.count, "first-type sample size M");
  cantor->add_option("--seed", cantor_opt.seed, "first-type RNG seed");

  // ---- verify ----
  tentctl::cli::VerifyOptions verify_opt;
  std::string verify_in;
  auto* verify = app.add_subcommand("verify", "match find output against the oracle");
  verify->add_option("--H", verify_opt.H, "tent map slope (rational)");
  verify->add_option("--period", verify_opt.period, "target period T")->required();
  verify->add_option("--tolerance", verify_opt.tolerance, "match tolerance");
  verify->add_option("--in", verify_in, "find JSON-lines file (default: stdin)");

  CLI11_PARSE(app, argc, argv);

  std::ostringstream out;
  int code = 0;
  std::string command;
  Params params;

  if (*count) {
    command = "count";
    params = {{"period", std::to_string(count_opt.period)}};
    code = tentctl::cli::cmd_count(count_opt, out, std::cerr);
  } else if (*enumerate) {
    command = "enumerate";
    params = {{"H", enum_opt.H}, {"period", std::to_string(enum_opt.period)}};
    code = tentctl::cli::cmd_enumerate(enum_opt, out, std::cerr);
  } else if (*find) {
    command = "find";
    if (!find_offset.empty()) find_opt.offset = find_offset;
    if (!find_theta.empty()) find_opt.theta = find_theta;
    if (!find_seed.empty()) find_opt.seed_value = find_seed;
    if (!find_threshold.empty()) find_opt.threshold = find_threshold;
    if (!find_trace.empty()) find_opt.trace_path = find_trace;
    if (find_opt.precision == 0) find_opt.precision = env_precision();
    params = {{"H", find_opt.H},
              {"period", std::to_string(find_opt.period)},
              {"regime", find_opt.regime},
              {"offset", find_opt.offset.value_or("")},
              {"theta", find_opt.theta.value_or("")},
              {"seed_value", find_opt.seed_value.value_or("")},
              {"grid", std::to_string(find_opt.grid)},
              {"precision", std::to_string(find_opt.precision)},
              {"threshold", find_opt.threshold.value_or("")},
              {"max_iters", std::to_string(find_opt.max_iters)},
              {"force", find_opt.force ? "true" : "false"},
              {"range_lo", find_opt.range_lo},
              {"range_hi", find_opt.range_hi}};
    code = tentctl::cli::cmd_find(find_opt, out, std::cerr);
  } else if (*graph) {
    command = "graph";
    if (graph_opt.precision == 0) graph_opt.precision = env_precision();
    params = {{"H", graph_opt.H},
              {"period", std::to_string(graph_opt.period)},
              {"theta", graph_opt.theta},
              {"samples", std::to_string(graph_opt.samples)},
              {"precision", std::to_string(graph_opt.precision)}};
    code = tentctl::cli::cmd_graph(graph_opt, out, std::cerr);
  } else if (*cantor) {
    command = "cantor";
    if (!cantor_off_pos.empty()) cantor_opt.offset_pos = cantor_off_pos;
    if (!cantor_off_neg.empty()) cantor_opt.offset_neg = cantor_off_neg;
    if (cantor_opt.precision == 0) cantor_opt.precision = env_precision();
    params = {{"mode", cantor_opt.mode},
              {"H", cantor_opt.H},
              {"period", std::to_string(cantor_opt.period)},
              {"bins", std::to_string(cantor_opt.bins)},
              {"source", cantor_opt.source},
              {"depth", std::to_string(cantor_opt.depth)},
              {"count", std::to_string(cantor_opt.count)},
              {"seed", std::to_string(cantor_opt.seed)}};
    code = tentctl::cli::cmd_cantor(cantor_opt, out, std::cerr);
  } else if (*verify) {
    command = "verify";
    params = {{"H", verify_opt.H},
              {"period", std::to_string(verify_opt.period)},
              {"tolerance", verify_opt.tolerance},
              {"in", verify_in}};
    if (verify_in.empty()) {
      code = tentctl::cli::cmd_verify(verify_opt, std::cin, out, std::cerr);
    } else {
      std::ifstream in(verify_in);
      if (!in) {
        std::cerr << "error: cannot open " << verify_in << " (--in)\n";
        return 2;
      }
      code = tentctl::cli::cmd_verify(verify_opt, in, out, std::cerr);
    }
  }

  return deliver(code, command, params, out_path, out.str());
}
