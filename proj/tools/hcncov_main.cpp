// Coverage-probability experiments for random multi-antenna cellular
// networks with residual transceiver distortion.
//
//   hcncov validate <config.json>
//   hcncov run <config.json> [--trials N] [--seed S] [--engines a,b] [--out F] [--format csv|json]
//   hcncov oracle <config.json> [--samples N] [--seed S]
//
// Exit codes: 0 success, 1 validation/config error, 2 engine error in any row.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcncov/analytic.hpp"
#include "hcncov/sweep.hpp"
#include "hcncov/zf.hpp"

namespace {

std::vector<hcncov::Engine> parse_engine_list(const std::string& csv) {
  std::vector<hcncov::Engine> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "analytic")
      out.push_back(hcncov::Engine::analytic);
    else if (item == "montecarlo")
      out.push_back(hcncov::Engine::montecarlo);
    else if (item == "channel-level")
      out.push_back(hcncov::Engine::channel_level);
    else
      throw hcncov::ConfigError("unknown engine '" + item + "'");
  }
  if (out.empty()) throw hcncov::ConfigError("empty engine list");
  return out;
}

int cmd_validate(const std::string& path) {
  try {
    const auto spec = hcncov::load_config(path);
    if (!spec.window.adequately_sized(spec.base.lambda_b))
      std::cerr << "warning: lambda_b * window area < 20; boundary effects will dominate\n";
    std::cout << "ok: " << spec.values.size() << " sweep point(s) over "
              << hcncov::to_string(spec.variable) << ", " << spec.trials << " trials\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_run(const std::string& path, long long trials, long long seed,
            const std::string& engines, const std::string& out, const std::string& format) {
  hcncov::SweepSpec spec;
  try {
    spec = hcncov::load_config(path);
    if (trials >= 0) spec.trials = static_cast<std::size_t>(trials);
    if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
    if (!engines.empty()) spec.engines = parse_engine_list(engines);
    spec.validate();
    if (!spec.window.adequately_sized(spec.base.lambda_b))
      std::cerr << "warning: lambda_b * window area < 20; boundary effects will dominate\n";
  } catch (const std::exception& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  }
  try {
    const auto curve = hcncov::run_sweep(spec);
    if (out.empty()) {
      hcncov::emit_csv(curve, std::cout);
    } else {
      hcncov::emit(curve, format, out);
      std::cerr << "wrote " << out << '\n';
    }
    std::cerr << "wall time: " << curve.metadata.wall_time_s << " s\n";
    int rc = 0;
    for (const auto& row : curve.rows) {
      if (row.bound_violation)
        std::cerr << "note: row " << row.sweep_value << " flagged bound-violation\n";
      if (!row.error.empty()) {
        std::cerr << "row " << row.sweep_value << ": " << row.error << '\n';
        rc = 2;
      }
    }
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_oracle(const std::string& path, long long samples, long long seed) {
  hcncov::SweepSpec spec;
  try {
    spec = hcncov::load_config(path);
  } catch (const std::exception& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  }
  const std::size_t n = samples > 0 ? static_cast<std::size_t>(samples) : 100000;
  const std::uint64_t s = seed >= 0 ? static_cast<std::uint64_t>(seed) : 20240901;
  const int m = spec.base.m_antennas;
  const int k = spec.base.k_users;
  std::printf("KS cross-validation, M=%d K=%d, n=%zu, seed=%llu\n", m, k, n,
              static_cast<unsigned long long>(s));
  const auto r = hcncov::run_ks_suite(m, k, n, s);
  std::printf("  desired power   vs Gamma(%d,1): D=%.5f  p=%.4f  [%s]\n", m - k + 1,
              r.desired.statistic, r.desired.p_value,
              r.desired.p_value > 0.01 ? "pass" : "FAIL");
  std::printf("  interference    vs Gamma(%d,1): D=%.5f  p=%.4f  [%s]\n", k,
              r.interference.statistic, r.interference.p_value,
              r.interference.p_value > 0.01 ? "pass" : "FAIL");
  return r.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage probability for PPP-deployed multi-antenna downlinks "
               "with residual hardware distortion"};
  app.require_subcommand(1);

  std::string config_path;
  long long trials = -1, seed = -1, samples = -1;
  std::string engines, out, format = "csv";

  auto* validate = app.add_subcommand("validate", "parse and validate a config file");
  validate->add_option("config", config_path, "JSON config file")->required();

  auto* run = app.add_subcommand("run", "run the configured sweep");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--trials", trials, "override Monte Carlo trial count");
  run->add_option("--seed", seed, "override RNG seed");
  run->add_option("--engines", engines, "comma list: analytic,montecarlo,channel-level");
  run->add_option("--out", out, "output file (default: CSV to stdout)");
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* oracle = app.add_subcommand("oracle", "run the channel-level KS cross-validation");
  oracle->add_option("config", config_path, "JSON config file")->required();
  oracle->add_option("--samples", samples, "KS sample size (default 1e5)");
  oracle->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return cmd_validate(config_path);
  if (run->parsed()) return cmd_run(config_path, trials, seed, engines, out, format);
  return cmd_oracle(config_path, samples, seed);
}
