#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcncov/config.hpp"
#include "hcncov/mc.hpp"

namespace hcncov {

enum class SweepVariable { target_sir_db, delta_t, delta_r, power_db, m_antennas, k_users };
enum class Engine { analytic, montecarlo, channel_level };

std::string to_string(SweepVariable v);
std::string to_string(Engine e);

/// Parse/validation failure with the offending field or location in what().
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  NetworkConfig base;
  Window window;
  SweepVariable variable = SweepVariable::target_sir_db;
  std::vector<double> values;      ///< non-empty; every derived config must validate
  std::vector<Engine> engines{Engine::analytic, Engine::montecarlo};
  std::size_t trials = 100000;
  std::uint64_t seed = 1;

  void validate() const;                       // throws ConfigError
  NetworkConfig config_at(double value) const; // base with the swept field substituted
};

struct CurveRow {
  double sweep_value = 0.0;
  std::optional<double> analytic_raw;  ///< unclamped bound
  std::optional<double> analytic;      ///< clamped to [0,1]
  std::optional<double> mc;            ///< estimate from the engine(s) selected
  std::optional<double> ci;            ///< 95% half-width of mc
  std::size_t trials = 0;
  std::string error;           ///< engine failure; empty on success
  bool bound_violation = false;  ///< raw bound fell below mc - ci (flagged, not fatal)
};

struct RunMetadata {
  NetworkConfig base;
  Window window;
  SweepVariable variable = SweepVariable::target_sir_db;
  std::vector<Engine> engines;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string version;
  double wall_time_s = 0.0;  ///< in-memory only; never serialized (outputs are byte-stable)
};

struct CoverageCurve {
  std::vector<CurveRow> rows;  ///< ordered by sweep index
  RunMetadata metadata;
};

/// Load a JSON experiment description. dB-suffixed fields are converted to
/// linear on load; exactly one of {power_db, power_linear} and of
/// {target_sir_db, target_sir_linear} may appear. Defaults: lambda_u =
/// 6*lambda_b, 5 km x 6 km window, 10^5 trials, seed 1, engines
/// [analytic, montecarlo], single-point "sweep" at the base target.
SweepSpec load_config(const std::filesystem::path& path);
SweepSpec parse_config(const std::string& text, const std::string& origin = "<config>");

/// Run every row of the sweep. Engine errors are recorded per row rather than
/// aborting; rows where the raw bound violates mc - ci are flagged. Identical
/// spec + seed yields identical rows.
CoverageCurve run_sweep(const SweepSpec& spec);

/// CSV: header "sweep_value,analytic_raw,analytic,mc,ci,trials,error", values
/// at 6 significant digits, blanks for engines not selected. Byte-stable.
void emit_csv(const CoverageCurve& curve, std::ostream& os);
/// JSON with full metadata (minus wall time). Byte-stable.
void emit_json(const CoverageCurve& curve, std::ostream& os);
/// format is "csv" or "json"; throws ConfigError on unknown formats and
/// std::runtime_error on I/O failure.
void emit(const CoverageCurve& curve, const std::string& format, const std::filesystem::path& path);

}  // namespace hcncov
