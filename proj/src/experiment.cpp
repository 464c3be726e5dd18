#include "hyperis/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hyperis/local.hpp"
#include "hyperis/lowdeg.hpp"
#include "hyperis/models.hpp"
#include "hyperis/ogp.hpp"
#include "hyperis/oracle.hpp"
#include "hyperis/thresholds.hpp"

namespace hyperis::cli {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::vector<double> parse_gamma(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
      double num = std::stod(tok.substr(0, slash));
      double den = std::stod(tok.substr(slash + 1));
      out.push_back(num / den);
    } else {
      out.push_back(std::stod(tok));
    }
  }
  return out;
}

namespace {

GammaVector gamma_or_uniform(const std::string& text, int r) {
  if (text.empty()) return GammaVector::uniform(r);
  return GammaVector(parse_gamma(text));
}

double derive_uniform_p(int n, int r, double d, double p) {
  if (p >= 0.0) return p;
  if (d < 0.0) throw std::invalid_argument("one of --d or --p is required");
  auto denom = binom_checked(static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(r - 1));
  if (!denom || *denom == 0) throw std::invalid_argument("C(n-1,r-1) unavailable for p derivation");
  return d / static_cast<double>(*denom);
}

double derive_partite_p(int n, int r, double d, double p) {
  if (p >= 0.0) return p;
  if (d < 0.0) throw std::invalid_argument("one of --d or --p is required");
  return d / std::pow(static_cast<double>(n), static_cast<double>(r - 1));
}

void echo(std::ostream& os, const std::string& line) { os << "# " << line << '\n'; }

LocalFunction rule_by_name(const std::string& name) {
  if (name == "min-blocking") return min_blocking_rule();
  if (name == "min-blocking-parity") return min_blocking_parity_rule();
  if (name == "isolated") return isolated_rule(1);
  if (name == "isolated2") return isolated_rule(2);
  throw std::invalid_argument("unknown rule: " + name);
}

}  // namespace

void run_generate(const GenerateConfig& cfg, std::ostream& os) {
  if (cfg.n <= 0) throw std::invalid_argument("generate: --n is required");
  Seed seed{cfg.seed};
  if (cfg.partite) {
    double p = derive_partite_p(cfg.n, cfg.r, cfg.d, cfg.p);
    save_text(sample_partite_hypergraph(cfg.r, cfg.n, p, seed), os);
  } else {
    double p = derive_uniform_p(cfg.n, cfg.r, cfg.d, cfg.p);
    save_text(sample_uniform_hypergraph(cfg.n, cfg.r, p, seed), os);
  }
}

void run_greedy(const GreedyConfig& cfg, std::ostream& os) {
  if (cfg.n <= 0) throw std::invalid_argument("greedy: --n is required");
  if (cfg.trials < 1) throw std::invalid_argument("greedy: --trials must be >= 1");
  const double p = derive_uniform_p(cfg.n, cfg.r, cfg.d, cfg.p);
  echo(os, "config subcommand=greedy n=" + std::to_string(cfg.n) + " r=" + std::to_string(cfg.r) +
               " d=" + format_double(cfg.d) + " trials=" + std::to_string(cfg.trials) +
               " seed=" + std::to_string(cfg.seed));
  echo(os, "version " + std::string(kVersion));
  echo(os, "p_derived=" + format_double(p));
  os << "n,r,d,trial,set_size,density,se\n";
  Seed master = Seed{cfg.seed}.stream("greedy");
  std::vector<double> densities;
  for (long t = 0; t < cfg.trials; ++t) {
    Seed trial = master.stream(static_cast<std::uint64_t>(t));
    Hypergraph h = sample_uniform_hypergraph(cfg.n, cfg.r, p, trial.stream("instance"));
    VertexLabels labels = VertexLabels::sample(cfg.n, trial.stream("labels"));
    VertexSet out = random_greedy(h, labels);
    double density = static_cast<double>(out.size()) / static_cast<double>(cfg.n);
    densities.push_back(density);
    os << cfg.n << ',' << cfg.r << ',' << format_double(cfg.d) << ',' << t << ',' << out.size()
       << ',' << format_double(density) << ",\n";
  }
  Estimate m = mean_estimate(densities);
  os << cfg.n << ',' << cfg.r << ',' << format_double(cfg.d) << ",-1,,"
     << format_double(m.value) << ',' << format_double(m.se) << '\n';
}

void run_gw_density(const GwDensityConfig& cfg, std::ostream& os) {
  if (cfg.trials < 1) throw std::invalid_argument("gw-density: --trials must be >= 1");
  const long delta = cfg.delta > 0 ? cfg.delta : default_degree_cap(cfg.d);
  echo(os, "config subcommand=gw-density d=" + format_double(cfg.d) + " r=" + std::to_string(cfg.r) +
               " delta=" + std::to_string(delta) + " depth=" + std::to_string(cfg.depth) +
               " trials=" + std::to_string(cfg.trials) + " seed=" + std::to_string(cfg.seed));
  echo(os, "version " + std::string(kVersion));
  os << "d,r,delta,depth,trial,root_in,density,se\n";
  Seed master = Seed{cfg.seed}.stream("gw-density");
  long hits = 0;
  for (long t = 0; t < cfg.trials; ++t) {
    Seed trial = master.stream(static_cast<std::uint64_t>(t));
    RootedHypertree tree = sample_gw_hypertree(cfg.d, cfg.r, cfg.depth, trial.stream("tree"));
    VertexSet out = adapt_greedy_to_gw(tree, delta, trial.stream("greedy"));
    const int in = out.contains(0) ? 1 : 0;
    hits += in;
    os << format_double(cfg.d) << ',' << cfg.r << ',' << delta << ',' << cfg.depth << ',' << t
       << ',' << in << ",,\n";
  }
  Estimate e = proportion_estimate(hits, cfg.trials);
  os << format_double(cfg.d) << ',' << cfg.r << ',' << delta << ',' << cfg.depth << ",-1,,"
     << format_double(e.value) << ',' << format_double(e.se) << '\n';
}

void run_lowdeg_compile(const LowdegCompileConfig& cfg, std::ostream& os) {
  if (cfg.n <= 0) throw std::invalid_argument("lowdeg-compile: --n is required");
  if (cfg.trials < 1) throw std::invalid_argument("lowdeg-compile: --trials must be >= 1");
  const double p = derive_uniform_p(cfg.n, cfg.r, cfg.d, cfg.p);
  LocalFunction g = rule_by_name(cfg.rule);
  CompiledLocalPolynomial compiled(g, cfg.q, cfg.q_max);
  Seed master = Seed{cfg.seed}.stream("lowdeg-compile");

  long identity_checked = 0, identity_matches = 0, overflow = 0, total_vertices = 0;
  std::vector<double> densities;
  bool all_independent = true;
  for (long t = 0; t < cfg.trials; ++t) {
    Seed trial = master.stream(static_cast<std::uint64_t>(t));
    Hypergraph h = sample_uniform_hypergraph(cfg.n, cfg.r, p, trial.stream("instance"));
    VertexLabels labels = VertexLabels::sample(cfg.n, trial.stream("labels"));
    auto values = compiled.evaluate_all(h, labels);
    for (int v = 0; v < cfg.n; ++v) {
      ++total_vertices;
      if (values[static_cast<size_t>(v)].overflow) {
        ++overflow;
        continue;
      }
      RootedView view = neighborhood(h, v, g.radius);
      if (view.is_hypertree() && view.edge_count() <= cfg.q) {
        ++identity_checked;
        std::vector<double> local(view.to_host.size());
        for (size_t i = 0; i < view.to_host.size(); ++i) {
          local[i] = labels.values[static_cast<size_t>(view.to_host[i])];
        }
        double want = static_cast<double>(g.eval(view, local));
        if (std::fabs(values[static_cast<size_t>(v)].value - want) <= 1e-9) ++identity_matches;
      }
    }
    RoundingOutcome rounded = round_to_independent_set(values, h, cfg.eta);
    if (!is_independent(h, rounded.accepted_set())) all_independent = false;
    densities.push_back(static_cast<double>(rounded.accepted_set().size()) /
                        static_cast<double>(cfg.n));
  }
  Estimate dens = mean_estimate(densities);
  json result = {
      {"trials", cfg.trials},
      {"mean_accepted_density", dens.value},
      {"se", dens.se},
      {"overflow_fraction", static_cast<double>(overflow) / static_cast<double>(total_vertices)},
      {"identity_checked", identity_checked},
      {"identity_matches", identity_matches},
      {"pass", all_independent && identity_checked == identity_matches},
  };
  json out = {
      {"meta",
       {{"subcommand", "lowdeg-compile"},
        {"version", kVersion},
        {"n", cfg.n},
        {"r", cfg.r},
        {"d", cfg.d},
        {"p_derived", p},
        {"rule", cfg.rule},
        {"q", cfg.q},
        {"eta", cfg.eta},
        {"seed", cfg.seed}}},
      {"result", result},
  };
  os << out.dump(2) << '\n';
}

void run_balanced(const BalancedRunConfig& cfg, std::ostream& os) {
  if (cfg.n <= 0) throw std::invalid_argument("balanced-run: --n is required");
  if (cfg.trials < 1) throw std::invalid_argument("balanced-run: --trials must be >= 1");
  const double p = derive_partite_p(cfg.n, cfg.r, cfg.d, cfg.p);
  GammaVector gamma = gamma_or_uniform(cfg.gamma, cfg.r);
  TargetSizes targets = target_sizes(gamma, cfg.r, cfg.n, cfg.d, cfg.epsilon,
                                     TargetSide::achievability);
  echo(os, "config subcommand=balanced-run r=" + std::to_string(cfg.r) + " n=" + std::to_string(cfg.n) +
               " d=" + format_double(cfg.d) + " epsilon=" + format_double(cfg.epsilon) +
               " trials=" + std::to_string(cfg.trials) + " seed=" + std::to_string(cfg.seed));
  echo(os, "version " + std::string(kVersion));
  echo(os, "p_derived=" + format_double(p));
  {
    std::string ks = "targets=";
    for (size_t i = 0; i < targets.rounded.size(); ++i) {
      if (i) ks += ",";
      ks += std::to_string(targets.rounded[i]);
    }
    echo(os, ks);
  }
  os << "r,n,d,trial,accepted,selection_size,star_count,balanced_size\n";
  Seed master = Seed{cfg.seed}.stream("balanced-run");
  for (long t = 0; t < cfg.trials; ++t) {
    Seed trial = master.stream(static_cast<std::uint64_t>(t));
    PartiteHypergraph h = sample_partite_hypergraph(cfg.r, cfg.n, p, trial.stream("instance"));
    auto [poly, outcome] = degree1_balanced(h, targets.rounded, trial.stream("omega"));
    VertexSet accepted = outcome.accepted_set();
    long star_count = 0;
    int i_star = gamma.argmax();
    // degree-1 construction designates the last part among tied maxima
    for (int j = i_star + 1; j < cfg.r; ++j) {
      if (targets.rounded[static_cast<size_t>(j)] >= targets.rounded[static_cast<size_t>(i_star)]) i_star = j;
    }
    for (std::int32_t v : accepted) {
      if (h.part_of(v) == i_star) ++star_count;
    }
    VertexSet balanced = largest_balanced_subset(h, accepted, gamma);
    os << cfg.r << ',' << cfg.n << ',' << format_double(cfg.d) << ',' << t << ','
       << (outcome.accepted ? 1 : 0) << ',' << accepted.size() << ',' << star_count << ','
       << balanced.size() << '\n';
  }
}

void run_contract_check(const ContractCheckConfig& cfg, std::ostream& os) {
  if (cfg.n <= 0) throw std::invalid_argument("contract-check: --n is required");
  if (cfg.trials < 1) throw std::invalid_argument("contract-check: --trials must be >= 1");
  const double p = derive_partite_p(cfg.n, cfg.r, cfg.d, cfg.p);
  GammaVector gamma = gamma_or_uniform(cfg.gamma, cfg.r);
  TargetSizes targets = target_sizes(gamma, cfg.r, cfg.n, cfg.d, cfg.epsilon,
                                     TargetSide::achievability);
  const std::vector<long>& k = targets.rounded;
  auto builder = [&](const PartiteHypergraph& inst, Seed omega) {
    auto [poly, outcome] = degree1_balanced(inst, k, omega);
    (void)outcome;
    return poly.evaluate(inst);
  };
  double xi = cfg.xi;
  OptimizationReport rep = check_optimization_partite(builder, cfg.r, cfg.n, p, k, cfg.delta,
                                                      xi > 0.0 ? xi : 1.0, cfg.eta, cfg.trials,
                                                      Seed{cfg.seed}.stream("contract-check"));
  json params = {
      {"r", cfg.r},          {"n", cfg.n},     {"d", cfg.d},       {"p_derived", p},
      {"epsilon", cfg.epsilon}, {"xi", cfg.xi}, {"delta", cfg.delta}, {"eta", cfg.eta},
      {"k", k},              {"seed", cfg.seed},
  };
  json result = {
      {"params", params},
      {"trials", rep.trials},
      {"mean_norm", rep.mean_norm},
      {"success_rate", rep.success_rate},
      {"se", rep.success_se},
      {"norm_se", rep.norm_se},
      {"empirical_xi", rep.empirical_xi},
      {"pass", (xi <= 0.0 || rep.norm_ok) && rep.success_ok},
  };
  json out = {
      {"meta", {{"subcommand", "contract-check"}, {"version", kVersion}}},
      {"result", result},
  };
  os << out.dump(2) << '\n';
}

void run_oracle(const OracleConfig& cfg, std::ostream& os) {
  std::ifstream in(cfg.input);
  if (!in) throw std::invalid_argument("oracle: cannot open " + cfg.input);
  auto loaded = load_text(in);
  json result;
  if (std::holds_alternative<Hypergraph>(loaded)) {
    const auto& h = std::get<Hypergraph>(loaded);
    OracleResult res = max_independent_set(h, cfg.cap);
    result = {{"optimum", res.optimum}, {"witness", res.witness.members()}, {"nodes", res.nodes}};
  } else {
    const auto& h = std::get<PartiteHypergraph>(loaded);
    GammaVector gamma = gamma_or_uniform(cfg.gamma, h.parts());
    OracleResult res = cfg.block > 0 ? max_p_independent(h, gamma, cfg.block, cfg.cap)
                                     : max_gamma_balanced(h, gamma, cfg.cap);
    result = {{"optimum", res.optimum}, {"witness", res.witness.members()}, {"nodes", res.nodes}};
  }
  json out = {
      {"meta", {{"subcommand", "oracle"}, {"version", kVersion}, {"input", cfg.input}}},
      {"result", result},
  };
  os << out.dump(2) << '\n';
}

void run_ogp_path(const OgpPathConfig& cfg, std::ostream& os) {
  if (cfg.n <= 0) throw std::invalid_argument("ogp-path: --n is required");
  if (cfg.trials < 1) throw std::invalid_argument("ogp-path: --trials must be >= 1");
  GammaVector gamma = gamma_or_uniform(cfg.gamma, cfg.r);
  if (!cfg.partite) throw std::invalid_argument("ogp-path: only the partite model carries the degree-1 algorithm");
  const double p = derive_partite_p(cfg.n, cfg.r, cfg.d, cfg.p);
  TargetSizes targets = target_sizes(gamma, cfg.r, cfg.n, cfg.d, cfg.epsilon,
                                     TargetSide::achievability);
  int i_star = gamma.argmax();
  for (int j = i_star + 1; j < cfg.r; ++j) {
    if (targets.rounded[static_cast<size_t>(j)] >= targets.rounded[static_cast<size_t>(i_star)]) i_star = j;
  }
  VertexPolynomialSet poly = degree1_polynomial(cfg.r, cfg.n, targets.rounded, i_star,
                                                Seed{cfg.seed}.stream("omega"));
  std::uint64_t m = 1;
  for (int j = 0; j < cfg.r; ++j) m *= static_cast<std::uint64_t>(cfg.n);
  double norm_ref = 0.0;
  if (cfg.c > 0.0) {
    norm_ref = estimate_mean_square_norm(poly, m, p, cfg.norm_trials, Seed{cfg.seed}.stream("norm"));
  }

  echo(os, "config subcommand=ogp-path r=" + std::to_string(cfg.r) + " n=" + std::to_string(cfg.n) +
               " d=" + format_double(cfg.d) + " epsilon=" + format_double(cfg.epsilon) +
               " K=" + std::to_string(cfg.K) + " Gamma=" + std::to_string(cfg.Gamma) +
               " c=" + format_double(cfg.c) + " trials=" + std::to_string(cfg.trials) +
               " seed=" + std::to_string(cfg.seed));
  echo(os, "version " + std::string(kVersion));
  echo(os, "p_derived=" + format_double(p));
  if (cfg.c > 0.0) echo(os, "norm_ref=" + format_double(norm_ref));

  os << "trial,t,step_hamming,set_size,new_mass,k_index,bad_step_flag\n";
  std::uint64_t total = static_cast<std::uint64_t>(cfg.Gamma) * m;
  std::uint64_t emit_every = cfg.emit_every > 0 ? cfg.emit_every : std::max<std::uint64_t>(1, total / 10000);
  for (long trial = 0; trial < cfg.trials; ++trial) {
    PathExperiment exp;
    exp.model = PathExperiment::Model::partite;
    exp.r = cfg.r;
    exp.n = cfg.n;
    exp.d = cfg.d;
    exp.p = p;
    exp.gamma = gamma.entries();
    exp.epsilon = cfg.epsilon;
    exp.K = cfg.K;
    exp.Gamma = cfg.Gamma;
    exp.c = cfg.c;
    exp.norm_ref = norm_ref;
    exp.seed = Seed{cfg.seed}.stream("path").stream(static_cast<std::uint64_t>(trial));
    exp.poly = &poly;
    OverlapRecord rec = build_overlap_sequence(
        exp, [&](std::uint64_t t, long hamming, long size, long nm, int k, bool bad) {
          if (bad || t % emit_every == 0) {
            os << trial << ',' << t << ',' << hamming << ',' << size << ',' << nm << ',' << k
               << ',' << (bad ? 1 : 0) << '\n';
          }
        });
    echo(os, "trial=" + std::to_string(trial) + " window=[" + format_double(rec.window_lower) +
                 "," + format_double(rec.window_upper) + "] reached_k=" + std::to_string(rec.reached_k) +
                 " failed=" + std::to_string(rec.process_failed ? 1 : 0) +
                 " max_step_hamming=" + std::to_string(rec.max_step_hamming) +
                 " bad_steps=" + std::to_string(rec.bad_steps));
    for (const auto& s : rec.sets) {
      echo(os, "snapshot trial=" + std::to_string(trial) + " k=" + std::to_string(s.k) +
                   " t=" + std::to_string(s.t) + " set_size=" + std::to_string(s.set_size) +
                   " new_mass=" + std::to_string(s.new_mass) +
                   " window_ok=" + std::to_string(s.window_ok ? 1 : 0) +
                   " size_ok=" + std::to_string(s.size_ok ? 1 : 0) +
                   " independent_ok=" + std::to_string(s.independent_ok ? 1 : 0));
    }
  }
}

void run_thresholds(const ThresholdsConfig& cfg, std::ostream& os) {
  if (cfg.d_list.empty()) throw std::invalid_argument("thresholds: at least one --d is required");
  echo(os, "config subcommand=thresholds r=" + std::to_string(cfg.r));
  echo(os, "version " + std::string(kVersion));
  if (cfg.gamma.empty()) {
    os << "r,d,stat,lowdeg,gap_factor\n";
    for (double d : cfg.d_list) {
      ThresholdSet t = uniform_thresholds(cfg.r, d);
      os << cfg.r << ',' << format_double(d) << ',' << format_double(t.stat) << ','
         << format_double(t.lowdeg) << ',' << format_double(t.gap_factor) << '\n';
    }
  } else {
    GammaVector gamma(parse_gamma(cfg.gamma));
    os << "r,d,c_gamma,f,stat_density,lowdeg_density,i_star\n";
    for (double d : cfg.d_list) {
      BalancedParams bp = balanced_params(gamma, cfg.r, d);
      os << cfg.r << ',' << format_double(d) << ',' << format_double(bp.c_gamma) << ','
         << format_double(bp.f) << ',' << format_double(bp.stat_density) << ','
         << format_double(bp.lowdeg_density) << ',' << bp.i_star << '\n';
    }
  }
}

void run_sweep(const SweepConfig& cfg, std::ostream& os) {
  if (cfg.trials < 1) throw std::invalid_argument("sweep: --trials must be >= 1");
  if (cfg.n_list.empty() || cfg.r_list.empty() || cfg.d_list.empty()) {
    throw std::invalid_argument("sweep: n, r and d lists must be nonempty");
  }
  echo(os, "config subcommand=sweep trials=" + std::to_string(cfg.trials) +
               " seed=" + std::to_string(cfg.seed));
  echo(os, "version " + std::string(kVersion));
  os << "n,r,d,trial,set_size,density\n";
  long cell = 0;
  for (int n : cfg.n_list) {
    for (int r : cfg.r_list) {
      for (double d : cfg.d_list) {
        Seed cell_seed = Seed{cfg.seed}.stream("sweep").stream(static_cast<std::uint64_t>(cell));
        const double p = derive_uniform_p(n, r, d, -1.0);
        for (long t = 0; t < cfg.trials; ++t) {
          Seed trial = cell_seed.stream(static_cast<std::uint64_t>(t));
          Hypergraph h = sample_uniform_hypergraph(n, r, p, trial.stream("instance"));
          VertexLabels labels = VertexLabels::sample(n, trial.stream("labels"));
          VertexSet out = random_greedy(h, labels);
          os << n << ',' << r << ',' << format_double(d) << ',' << t << ',' << out.size() << ','
             << format_double(static_cast<double>(out.size()) / static_cast<double>(n)) << '\n';
        }
        ++cell;
      }
    }
  }
}

}  // namespace hyperis::cli
