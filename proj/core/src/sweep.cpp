#include "hcncov/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hcncov/analytic.hpp"
#include "hcncov/zf.hpp"

namespace hcncov {

using ordered_json = nlohmann::ordered_json;

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::target_sir_db: return "target_sir_db";
    case SweepVariable::delta_t: return "delta_t";
    case SweepVariable::delta_r: return "delta_r";
    case SweepVariable::power_db: return "power_db";
    case SweepVariable::m_antennas: return "m_antennas";
    case SweepVariable::k_users: return "k_users";
  }
  return "?";
}

std::string to_string(Engine e) {
  switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::montecarlo: return "montecarlo";
    case Engine::channel_level: return "channel-level";
  }
  return "?";
}

namespace {

SweepVariable parse_variable(const std::string& s) {
  for (const auto v : {SweepVariable::target_sir_db, SweepVariable::delta_t,
                       SweepVariable::delta_r, SweepVariable::power_db,
                       SweepVariable::m_antennas, SweepVariable::k_users})
    if (to_string(v) == s) return v;
  throw ConfigError("unknown sweep variable '" + s + "'");
}

Engine parse_engine(const std::string& s) {
  for (const auto e : {Engine::analytic, Engine::montecarlo, Engine::channel_level})
    if (to_string(e) == s) return e;
  throw ConfigError("unknown engine '" + s + "'");
}

double require_number(const ordered_json& j, const std::string& key) {
  if (!j.at(key).is_number()) throw ConfigError("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

// "%.6g"-style formatting, locale-independent
std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep values must be non-empty");
  if (engines.empty()) throw ConfigError("at least one engine must be selected");
  if (trials == 0) throw ConfigError("trials must be >= 1");
  try {
    window.validate();
    for (const double v : values) config_at(v).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

NetworkConfig SweepSpec::config_at(double value) const {
  NetworkConfig cfg = base;
  switch (variable) {
    case SweepVariable::target_sir_db: cfg.target_sir = db_to_linear(value); break;
    case SweepVariable::delta_t: cfg.delta_t = value; break;
    case SweepVariable::delta_r: cfg.delta_r = value; break;
    case SweepVariable::power_db: cfg.power = db_to_linear(value); break;
    case SweepVariable::m_antennas: cfg.m_antennas = static_cast<int>(value); break;
    case SweepVariable::k_users: cfg.k_users = static_cast<int>(value); break;
  }
  return cfg;
}

SweepSpec parse_config(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");

  static const char* known[] = {"lambda_b", "lambda_u", "alpha", "m_antennas", "k_users",
                                "delta_t", "delta_r", "power_db", "power_linear",
                                "noise_power", "target_sir_db", "target_sir_linear",
                                "correlated_distortion", "window", "sweep", "engines",
                                "trials", "seed"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known))
      throw ConfigError(origin + ": unknown field '" + key + "'");
  }

  SweepSpec spec;
  try {
    for (const char* req : {"lambda_b", "alpha", "m_antennas", "k_users"})
      if (!j.contains(req)) throw ConfigError("missing required field '" + std::string(req) + "'");

    spec.base.lambda_b = require_number(j, "lambda_b");
    spec.base.lambda_u =
        j.contains("lambda_u") ? require_number(j, "lambda_u") : 6.0 * spec.base.lambda_b;
    spec.base.alpha = require_number(j, "alpha");
    spec.base.m_antennas = j.at("m_antennas").get<int>();
    spec.base.k_users = j.at("k_users").get<int>();
    if (j.contains("delta_t")) spec.base.delta_t = require_number(j, "delta_t");
    if (j.contains("delta_r")) spec.base.delta_r = require_number(j, "delta_r");

    if (j.contains("power_db") && j.contains("power_linear"))
      throw ConfigError("give exactly one of power_db / power_linear");
    if (j.contains("power_db")) spec.base.power = db_to_linear(require_number(j, "power_db"));
    if (j.contains("power_linear")) spec.base.power = require_number(j, "power_linear");

    if (j.contains("noise_power")) spec.base.noise_power = require_number(j, "noise_power");

    if (j.contains("target_sir_db") && j.contains("target_sir_linear"))
      throw ConfigError("give exactly one of target_sir_db / target_sir_linear");
    if (j.contains("target_sir_db"))
      spec.base.target_sir = db_to_linear(require_number(j, "target_sir_db"));
    if (j.contains("target_sir_linear"))
      spec.base.target_sir = require_number(j, "target_sir_linear");

    if (j.contains("correlated_distortion"))
      spec.base.correlated_distortion = j.at("correlated_distortion").get<bool>();

    if (j.contains("window")) {
      const auto& w = j.at("window");
      spec.window.width_km = require_number(w, "width_km");
      spec.window.height_km = require_number(w, "height_km");
    }

    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      spec.variable = parse_variable(s.at("variable").get<std::string>());
      spec.values = s.at("values").get<std::vector<double>>();
    } else {
      // single-point run at the base target
      spec.variable = SweepVariable::target_sir_db;
      spec.values = {linear_to_db(spec.base.target_sir)};
    }

    if (j.contains("engines")) {
      spec.engines.clear();
      for (const auto& e : j.at("engines")) spec.engines.push_back(parse_engine(e.get<std::string>()));
    }
    if (j.contains("trials")) spec.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  try {
    spec.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return spec;
}

SweepSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

CoverageCurve run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const bool want_analytic =
      std::find(spec.engines.begin(), spec.engines.end(), Engine::analytic) != spec.engines.end();
  const bool want_mc = std::find(spec.engines.begin(), spec.engines.end(),
                                 Engine::montecarlo) != spec.engines.end();
  const bool want_channel = std::find(spec.engines.begin(), spec.engines.end(),
                                      Engine::channel_level) != spec.engines.end();

  CoverageCurve curve;
  curve.rows.resize(spec.values.size());
  std::vector<NetworkConfig> cfgs;
  cfgs.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    curve.rows[i].sweep_value = spec.values[i];
    cfgs.push_back(spec.config_at(spec.values[i]));
  }

  // Monte Carlo: rows sharing (lambda_b, M, K) run on common random numbers.
  const bool crn_ok = spec.variable != SweepVariable::m_antennas &&
                      spec.variable != SweepVariable::k_users;
  // The mc column carries the distribution-level estimate; channel-level fills
  // it only when montecarlo is not also selected.
  if (want_mc && crn_ok) {
    const auto est = estimate_coverage_multi(cfgs, spec.window, spec.trials, spec.seed);
    for (std::size_t i = 0; i < est.size(); ++i) {
      curve.rows[i].mc = est[i].p_hat;
      curve.rows[i].ci = est[i].ci_halfwidth;
      curve.rows[i].trials = est[i].trials;
    }
  } else if (want_mc || want_channel) {
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
      try {
        const auto est =
            want_mc ? estimate_coverage(cfgs[i], spec.window, spec.trials, spec.seed)
                    : estimate_coverage_channel_level(cfgs[i], spec.window, spec.trials,
                                                      spec.seed);
        curve.rows[i].mc = est.p_hat;
        curve.rows[i].ci = est.ci_halfwidth;
        curve.rows[i].trials = est.trials;
      } catch (const std::exception& e) {
        curve.rows[i].error = e.what();
      }
    }
  }

  if (want_analytic) {
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
      try {
        const BoundResult b = coverage_bound(cfgs[i]);
        curve.rows[i].analytic_raw = b.value;
        curve.rows[i].analytic = b.clamped;
      } catch (const std::exception& e) {
        if (!curve.rows[i].error.empty()) curve.rows[i].error += "; ";
        curve.rows[i].error += e.what();
      }
    }
  }

  // embedded cross-check: the raw bound must sit above mc - ci
  for (auto& row : curve.rows)
    row.bound_violation = row.analytic_raw && row.mc && row.ci &&
                          *row.analytic_raw < *row.mc - *row.ci;

  curve.metadata.base = spec.base;
  curve.metadata.window = spec.window;
  curve.metadata.variable = spec.variable;
  curve.metadata.engines = spec.engines;
  curve.metadata.trials = spec.trials;
  curve.metadata.seed = spec.seed;
  curve.metadata.version = kVersion;
  curve.metadata.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return curve;
}

void emit_csv(const CoverageCurve& curve, std::ostream& os) {
  os << "sweep_value,analytic_raw,analytic,mc,ci,trials,error\n";
  for (const auto& r : curve.rows) {
    os << fmt6(r.sweep_value) << ',';
    if (r.analytic_raw) os << fmt6(*r.analytic_raw);
    os << ',';
    if (r.analytic) os << fmt6(*r.analytic);
    os << ',';
    if (r.mc) os << fmt6(*r.mc);
    os << ',';
    if (r.ci) os << fmt6(*r.ci);
    os << ',';
    if (r.trials > 0) os << r.trials;
    os << ',' << r.error;
    if (r.bound_violation) os << (r.error.empty() ? "" : "; ") << "bound-violation";
    os << '\n';
  }
}

void emit_json(const CoverageCurve& curve, std::ostream& os) {
  ordered_json meta;
  const auto& m = curve.metadata;
  meta["version"] = m.version;
  meta["config"] = {{"lambda_b", m.base.lambda_b},
                    {"lambda_u", m.base.lambda_u},
                    {"alpha", m.base.alpha},
                    {"m_antennas", m.base.m_antennas},
                    {"k_users", m.base.k_users},
                    {"delta_t", m.base.delta_t},
                    {"delta_r", m.base.delta_r},
                    {"power_linear", m.base.power},
                    {"noise_power", m.base.noise_power},
                    {"target_sir_linear", m.base.target_sir},
                    {"correlated_distortion", m.base.correlated_distortion}};
  meta["window"] = {{"width_km", m.window.width_km}, {"height_km", m.window.height_km}};
  meta["sweep_variable"] = to_string(m.variable);
  ordered_json engines = ordered_json::array();
  for (const auto e : m.engines) engines.push_back(to_string(e));
  meta["engines"] = engines;
  meta["trials"] = m.trials;
  meta["seed"] = m.seed;

  ordered_json rows = ordered_json::array();
  for (const auto& r : curve.rows) {
    ordered_json row;
    row["sweep_value"] = r.sweep_value;
    if (r.analytic_raw) row["analytic_raw"] = *r.analytic_raw;
    if (r.analytic) row["analytic"] = *r.analytic;
    if (r.mc) row["mc"] = *r.mc;
    if (r.ci) row["ci"] = *r.ci;
    if (r.trials > 0) row["trials"] = r.trials;
    if (!r.error.empty()) row["error"] = r.error;
    if (r.bound_violation) row["bound_violation"] = true;
    rows.push_back(row);
  }
  ordered_json doc;
  doc["metadata"] = meta;
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

void emit(const CoverageCurve& curve, const std::string& format,
          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  if (format == "csv")
    emit_csv(curve, out);
  else if (format == "json")
    emit_json(curve, out);
  else
    throw ConfigError("unknown output format '" + format + "' (use csv or json)");
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hcncov
