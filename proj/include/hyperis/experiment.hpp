#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hyperis::cli {

inline constexpr const char* kVersion = "0.1.0";

// Deterministic double formatting for result bodies.
std::string format_double(double x);

// "a/b" fractions or decimals, comma separated.
std::vector<double> parse_gamma(const std::string& text);

struct GenerateConfig {
  bool partite = false;
  int n = 0;
  int r = 3;
  double d = -1.0;  // one of d or p must be set
  double p = -1.0;
  std::uint64_t seed = 0;
};

struct GreedyConfig {
  int n = 0;
  int r = 3;
  double d = -1.0;
  double p = -1.0;
  long trials = 1;
  std::uint64_t seed = 0;
};

struct GwDensityConfig {
  double d = 0.0;
  int r = 3;
  long delta = 0;  // 0 = ceil(d + d^{3/4})
  int depth = 3;
  long trials = 100;
  std::uint64_t seed = 0;
};

struct LowdegCompileConfig {
  int n = 0;
  int r = 3;
  double d = -1.0;
  double p = -1.0;
  std::string rule = "min-blocking";  // min-blocking | min-blocking-parity | isolated
  int q = 12;
  int q_max = 16;
  double eta = 0.1;
  long trials = 10;
  std::uint64_t seed = 0;
};

struct BalancedRunConfig {
  int r = 3;
  int n = 0;
  double d = -1.0;
  double p = -1.0;
  std::string gamma;  // empty = uniform
  double epsilon = 0.2;
  long trials = 1;
  std::uint64_t seed = 0;
};

struct ContractCheckConfig {
  int r = 3;
  int n = 0;
  double d = -1.0;
  double p = -1.0;
  std::string gamma;
  double epsilon = 0.2;
  double xi = 0.0;  // 0 = auto-report only (pass judged on empirical xi <= xi when set)
  double delta = 0.05;
  double eta = 0.0;
  long trials = 100;
  std::uint64_t seed = 0;
};

struct OracleConfig {
  std::string input;   // path to a plain-text hypergraph
  std::string gamma;   // for partite inputs; empty = uniform
  int block = 0;       // 0 = no block constraint
  int cap = 40;
};

struct OgpPathConfig {
  bool partite = true;
  int r = 3;
  int n = 0;
  double d = -1.0;
  double p = -1.0;
  std::string gamma;
  double epsilon = 0.2;
  int K = 3;
  int Gamma = 1;
  double c = 0.0;
  long norm_trials = 200;
  long trials = 1;
  std::uint64_t emit_every = 0;  // 0 = auto
  std::uint64_t seed = 0;
};

struct ThresholdsConfig {
  int r = 2;
  std::vector<double> d_list;
  std::string gamma;  // optional
};

struct SweepConfig {
  // Cartesian sweep of the greedy experiment
  std::vector<int> n_list;
  std::vector<int> r_list;
  std::vector<double> d_list;
  long trials = 1;
  std::uint64_t seed = 0;
};

void run_generate(const GenerateConfig& cfg, std::ostream& os);
void run_greedy(const GreedyConfig& cfg, std::ostream& os);
void run_gw_density(const GwDensityConfig& cfg, std::ostream& os);
void run_lowdeg_compile(const LowdegCompileConfig& cfg, std::ostream& os);
void run_balanced(const BalancedRunConfig& cfg, std::ostream& os);
void run_contract_check(const ContractCheckConfig& cfg, std::ostream& os);
void run_oracle(const OracleConfig& cfg, std::ostream& os);
void run_ogp_path(const OgpPathConfig& cfg, std::ostream& os);
void run_thresholds(const ThresholdsConfig& cfg, std::ostream& os);
void run_sweep(const SweepConfig& cfg, std::ostream& os);

}  // namespace hyperis::cli
