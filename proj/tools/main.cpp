#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperis/experiment.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HYPERIS_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 12345;
}

// Buffers the body so partial results are never written, then appends the
// wall time as a trailing comment (CSV) or writes the body as-is (JSON,
// hypergraph files).
int emit(const std::string& out_path, const std::string& body, bool timing_comment,
         double wall_ms) {
  std::ostringstream full;
  full << body;
  if (timing_comment) full << "# wall_time_ms=" << wall_ms << '\n';
  if (out_path.empty() || out_path == "-") {
    std::cout << full.str();
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file " << out_path << '\n';
    return 1;
  }
  f << full.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale experiments on independent sets in sparse random hypergraphs"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::string out_path;
  app.add_option("--out", out_path, "Output file (default: stdout)")->capture_default_str();

  hyperis::cli::GenerateConfig gen;
  gen.seed = default_seed();
  auto* c_gen = app.add_subcommand("generate", "Sample a hypergraph and write the text format");
  c_gen->add_flag("--partite", gen.partite, "Sample the r-partite model");
  c_gen->add_option("--n", gen.n, "Vertex count (per part for partite)")->required();
  c_gen->add_option("--r", gen.r, "Uniformity");
  c_gen->add_option("--d", gen.d, "Average degree (p is derived)");
  c_gen->add_option("--p", gen.p, "Edge probability (overrides --d)");
  c_gen->add_option("--seed", gen.seed, "Master seed");

  hyperis::cli::GreedyConfig greedy;
  greedy.seed = default_seed();
  auto* c_greedy = app.add_subcommand("greedy", "Random greedy independent set density");
  c_greedy->add_option("--n", greedy.n)->required();
  c_greedy->add_option("--r", greedy.r);
  c_greedy->add_option("--d", greedy.d);
  c_greedy->add_option("--p", greedy.p);
  c_greedy->add_option("--trials", greedy.trials);
  c_greedy->add_option("--seed", greedy.seed);

  hyperis::cli::GwDensityConfig gw;
  gw.seed = default_seed();
  auto* c_gw = app.add_subcommand("gw-density", "Root density of the adapted greedy on GW trees");
  c_gw->add_option("--d", gw.d)->required();
  c_gw->add_option("--r", gw.r);
  c_gw->add_option("--delta", gw.delta, "Degree cap (default ceil(d+d^0.75))");
  c_gw->add_option("--depth", gw.depth);
  c_gw->add_option("--trials", gw.trials);
  c_gw->add_option("--seed", gw.seed);

  hyperis::cli::LowdegCompileConfig lc;
  lc.seed = default_seed();
  auto* c_lc = app.add_subcommand("lowdeg-compile", "Compile a local rule and check the identity");
  c_lc->add_option("--n", lc.n)->required();
  c_lc->add_option("--r", lc.r);
  c_lc->add_option("--d", lc.d);
  c_lc->add_option("--p", lc.p);
  c_lc->add_option("--rule", lc.rule, "min-blocking | min-blocking-parity | isolated | isolated2");
  c_lc->add_option("--q", lc.q, "Monomial edge cap");
  c_lc->add_option("--q-max", lc.q_max, "Neighborhood edge guard");
  c_lc->add_option("--eta", lc.eta);
  c_lc->add_option("--trials", lc.trials);
  c_lc->add_option("--seed", lc.seed);

  hyperis::cli::BalancedRunConfig br;
  br.seed = default_seed();
  auto* c_br = app.add_subcommand("balanced-run", "Degree-1 balanced independent set algorithm");
  c_br->add_option("--r", br.r);
  c_br->add_option("--n", br.n)->required();
  c_br->add_option("--d", br.d);
  c_br->add_option("--p", br.p);
  c_br->add_option("--gamma", br.gamma, "Comma-separated proportions, fractions allowed");
  c_br->add_option("--epsilon", br.epsilon);
  c_br->add_option("--trials", br.trials);
  c_br->add_option("--seed", br.seed);

  hyperis::cli::ContractCheckConfig cc;
  cc.seed = default_seed();
  auto* c_cc = app.add_subcommand("contract-check", "Monte Carlo optimization-contract check");
  c_cc->add_option("--r", cc.r);
  c_cc->add_option("--n", cc.n)->required();
  c_cc->add_option("--d", cc.d);
  c_cc->add_option("--p", cc.p);
  c_cc->add_option("--gamma", cc.gamma);
  c_cc->add_option("--epsilon", cc.epsilon);
  c_cc->add_option("--xi", cc.xi, "Norm budget factor (0 = report only)");
  c_cc->add_option("--delta", cc.delta);
  c_cc->add_option("--eta", cc.eta);
  c_cc->add_option("--trials", cc.trials);
  c_cc->add_option("--seed", cc.seed);

  hyperis::cli::OracleConfig oc;
  auto* c_oc = app.add_subcommand("oracle", "Exact optimum of a hypergraph file");
  c_oc->add_option("--input", oc.input)->required();
  c_oc->add_option("--gamma", oc.gamma, "Balance proportions for partite inputs");
  c_oc->add_option("--block", oc.block, "Block size for the one-per-block constraint");
  c_oc->add_option("--cap", oc.cap, "Instance size cap");

  hyperis::cli::OgpPathConfig op;
  op.seed = default_seed();
  auto* c_op = app.add_subcommand("ogp-path", "Interpolation-path overlap probe (degree-1 algorithm)");
  c_op->add_option("--r", op.r);
  c_op->add_option("--n", op.n)->required();
  c_op->add_option("--d", op.d);
  c_op->add_option("--p", op.p);
  c_op->add_option("--gamma", op.gamma);
  c_op->add_option("--epsilon", op.epsilon);
  c_op->add_option("--K", op.K);
  c_op->add_option("--Gamma", op.Gamma);
  c_op->add_option("--c", op.c, "c-bad constant (0 disables flags)");
  c_op->add_option("--norm-trials", op.norm_trials);
  c_op->add_option("--trials", op.trials);
  c_op->add_option("--emit-every", op.emit_every, "Row thinning stride (0 = auto)");
  c_op->add_option("--seed", op.seed);

  hyperis::cli::ThresholdsConfig th;
  auto* c_th = app.add_subcommand("thresholds", "Closed-form threshold table");
  c_th->add_option("--r", th.r);
  c_th->add_option("--d", th.d_list, "One or more degrees")->required()->delimiter(',');
  c_th->add_option("--gamma", th.gamma, "Print balanced parameters instead");

  hyperis::cli::SweepConfig sw;
  sw.seed = default_seed();
  auto* c_sw = app.add_subcommand("sweep", "Cartesian greedy-density sweep");
  c_sw->add_option("--n", sw.n_list)->required()->delimiter(',');
  c_sw->add_option("--r", sw.r_list)->required()->delimiter(',');
  c_sw->add_option("--d", sw.d_list)->required()->delimiter(',');
  c_sw->add_option("--trials", sw.trials);
  c_sw->add_option("--seed", sw.seed);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::ostringstream body;
  bool csv = false;
  auto start = std::chrono::steady_clock::now();
  try {
    if (c_gen->parsed()) {
      hyperis::cli::run_generate(gen, body);
    } else if (c_greedy->parsed()) {
      hyperis::cli::run_greedy(greedy, body);
      csv = true;
    } else if (c_gw->parsed()) {
      hyperis::cli::run_gw_density(gw, body);
      csv = true;
    } else if (c_lc->parsed()) {
      hyperis::cli::run_lowdeg_compile(lc, body);
    } else if (c_br->parsed()) {
      hyperis::cli::run_balanced(br, body);
      csv = true;
    } else if (c_cc->parsed()) {
      hyperis::cli::run_contract_check(cc, body);
    } else if (c_oc->parsed()) {
      hyperis::cli::run_oracle(oc, body);
    } else if (c_op->parsed()) {
      hyperis::cli::run_ogp_path(op, body);
      csv = true;
    } else if (c_th->parsed()) {
      hyperis::cli::run_thresholds(th, body);
      csv = true;
    } else if (c_sw->parsed()) {
      hyperis::cli::run_sweep(sw, body);
      csv = true;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  auto end = std::chrono::steady_clock::now();
  double wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return emit(out_path, body.str(), csv, wall_ms);
}
