#include "linkplan/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "linkplan/capacity.hpp"
#include "linkplan/errors.hpp"
#include "linkplan/link_optimizer.hpp"
#include "linkplan/units.hpp"

namespace linkplan {

using nlohmann::json;

std::string study_kind_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::snr_distribution: return "snr-distribution";
    case StudyKind::gsnr_vs_span: return "gsnr-vs-span";
    case StudyKind::span_vs_length: return "span-vs-length";
    case StudyKind::cable_sweep: return "cable-sweep";
    case StudyKind::rate_plan: return "rate-plan";
  }
  return "unknown";
}

namespace {

// ---- config parsing -------------------------------------------------------

struct Checker {
  std::vector<std::string> issues;

  void fail(const std::string& msg) { issues.push_back(msg); }

  void keys(const json& obj, const std::string& block,
            std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : allowed)
        if (it.key() == k) { ok = true; break; }
      if (!ok) fail(block + ": unknown key \"" + it.key() + "\"");
    }
  }

  // Returns NaN when missing/invalid; error already recorded.
  double num(const json& obj, const std::string& block, const char* key,
             bool required, double fallback = 0.0) {
    if (!obj.contains(key)) {
      if (required) fail(block + ": missing required key \"" + std::string(key) + "\"");
      return required ? std::nan("") : fallback;
    }
    if (!obj.at(key).is_number()) {
      fail(block + "." + key + " must be a number");
      return std::nan("");
    }
    return obj.at(key).get<double>();
  }

  int integer(const json& obj, const std::string& block, const char* key,
              bool required, int fallback = 0) {
    if (!obj.contains(key)) {
      if (required) fail(block + ": missing required key \"" + std::string(key) + "\"");
      return fallback;
    }
    if (!obj.at(key).is_number_integer()) {
      fail(block + "." + key + " must be an integer");
      return fallback;
    }
    return obj.at(key).get<int>();
  }

  std::vector<double> num_list(const json& obj, const std::string& block,
                               const char* key, bool required) {
    std::vector<double> out;
    if (!obj.contains(key)) {
      if (required) fail(block + ": missing required key \"" + std::string(key) + "\"");
      return out;
    }
    if (!obj.at(key).is_array() || obj.at(key).empty()) {
      fail(block + "." + key + " must be a non-empty array of numbers");
      return out;
    }
    for (const auto& v : obj.at(key)) {
      if (!v.is_number()) {
        fail(block + "." + key + " must contain numbers only");
        return {};
      }
      out.push_back(v.get<double>());
    }
    return out;
  }

  void positive(double v, const std::string& what) {
    if (!(v > 0.0)) fail(what + " must be > 0");
  }

  void ordered(const std::vector<double>& v, const std::string& what) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) { fail(what + " must be strictly increasing"); return; }
  }
};

FiberSpec parse_fiber(const json& j, Checker& ck) {
  ck.keys(j, "fiber", {"loss_db_per_km", "gamma_per_w_km", "dispersion_ps_nm_km",
                       "reference_wavelength_nm", "excess_loss_db_per_span"});
  FiberSpec f;
  f.loss_db_per_km = ck.num(j, "fiber", "loss_db_per_km", true);
  f.gamma_per_w_km = ck.num(j, "fiber", "gamma_per_w_km", true);
  f.dispersion_ps_nm_km = ck.num(j, "fiber", "dispersion_ps_nm_km", true);
  f.reference_wavelength_m = ck.num(j, "fiber", "reference_wavelength_nm", false, 1550.0) * 1e-9;
  f.excess_loss_db_per_span = ck.num(j, "fiber", "excess_loss_db_per_span", false, 0.0);
  ck.positive(f.loss_db_per_km, "fiber.loss_db_per_km");
  if (!(f.gamma_per_w_km >= 0.0)) ck.fail("fiber.gamma_per_w_km must be >= 0");
  return f;
}

AmplifierSpec parse_amplifier(const json& j, Checker& ck) {
  ck.keys(j, "amplifier", {"noise_figure_db", "quantum_limit_warning_db"});
  AmplifierSpec a;
  a.noise_figure_db = ck.num(j, "amplifier", "noise_figure_db", true);
  a.quantum_limit_warning_db = ck.num(j, "amplifier", "quantum_limit_warning_db", false, 3.0);
  ck.positive(a.noise_figure_db, "amplifier.noise_figure_db");
  return a;
}

WdmGrid parse_grid(const json& j, Checker& ck) {
  ck.keys(j, "grid", {"channel_count", "symbol_rate_gbaud", "channel_spacing_ghz",
                      "center_frequency_thz"});
  WdmGrid g;
  g.channel_count = ck.integer(j, "grid", "channel_count", true);
  g.symbol_rate_hz = ck.num(j, "grid", "symbol_rate_gbaud", true) * 1e9;
  g.channel_spacing_hz = ck.num(j, "grid", "channel_spacing_ghz", true) * 1e9;
  g.center_frequency_hz = ck.num(j, "grid", "center_frequency_thz", true) * 1e12;
  if (g.channel_count <= 0) ck.fail("grid.channel_count must be positive");
  ck.positive(g.symbol_rate_hz, "grid.symbol_rate_gbaud");
  ck.positive(g.channel_spacing_hz, "grid.channel_spacing_ghz");
  ck.positive(g.center_frequency_hz, "grid.center_frequency_thz");
  if (g.symbol_rate_hz > g.channel_spacing_hz)
    ck.fail("grid.symbol_rate_gbaud must not exceed grid.channel_spacing_ghz");
  return g;
}

PowerFeedSpec parse_feed(const json& j, Checker& ck) {
  ck.keys(j, "feed", {"voltage_kv", "cable_resistance_ohm_per_km", "control_fraction",
                      "eo_efficiency"});
  PowerFeedSpec f;
  f.voltage_v = ck.num(j, "feed", "voltage_kv", true) * 1e3;
  f.cable_resistance_ohm_per_km = ck.num(j, "feed", "cable_resistance_ohm_per_km", false, 1.0);
  f.control_fraction = ck.num(j, "feed", "control_fraction", false, 0.10);
  f.eo_efficiency = ck.num(j, "feed", "eo_efficiency", false, 0.02);
  ck.positive(f.voltage_v, "feed.voltage_kv");
  ck.positive(f.cable_resistance_ohm_per_km, "feed.cable_resistance_ohm_per_km");
  if (!(f.control_fraction >= 0.0 && f.control_fraction < 1.0))
    ck.fail("feed.control_fraction must lie in [0, 1)");
  if (!(f.eo_efficiency > 0.0 && f.eo_efficiency <= 1.0))
    ck.fail("feed.eo_efficiency must lie in (0, 1]");
  return f;
}

// ---- table writing --------------------------------------------------------

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open result table path: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << "\n";
    }
  }
};

json fiber_json(const FiberSpec& f) {
  return {{"loss_db_per_km", f.loss_db_per_km},
          {"gamma_per_w_km", f.gamma_per_w_km},
          {"dispersion_ps_nm_km", f.dispersion_ps_nm_km},
          {"reference_wavelength_nm", f.reference_wavelength_m * 1e9},
          {"excess_loss_db_per_span", f.excess_loss_db_per_span}};
}

json grid_json(const WdmGrid& g) {
  return {{"channel_count", g.channel_count},
          {"symbol_rate_gbaud", g.symbol_rate_hz / 1e9},
          {"channel_spacing_ghz", g.channel_spacing_hz / 1e9},
          {"center_frequency_thz", g.center_frequency_hz / 1e12},
          {"total_bandwidth_thz", g.total_bandwidth_hz() / 1e12}};
}

json feed_json(const PowerFeedSpec& f) {
  return {{"voltage_kv", f.voltage_v / 1e3},
          {"cable_resistance_ohm_per_km", f.cable_resistance_ohm_per_km},
          {"control_fraction", f.control_fraction},
          {"eo_efficiency", f.eo_efficiency}};
}

}  // namespace

StudyConfig validate_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error({std::string("syntax error: ") + e.what()});
  }
  if (!root.is_object()) throw config_error({"config root must be an object"});

  Checker ck;
  StudyConfig cfg;

  ck.keys(root, "config", {"study_kind", "fiber", "amplifier", "grid", "feed", "cable",
                           "calibration", "sweep", "output"});

  std::string kind_name;
  if (!root.contains("study_kind") || !root.at("study_kind").is_string())
    ck.fail("config: missing required string key \"study_kind\"");
  else
    kind_name = root.at("study_kind").get<std::string>();

  static const std::map<std::string, StudyKind> kinds = {
      {"snr-distribution", StudyKind::snr_distribution},
      {"gsnr-vs-span", StudyKind::gsnr_vs_span},
      {"span-vs-length", StudyKind::span_vs_length},
      {"cable-sweep", StudyKind::cable_sweep},
      {"rate-plan", StudyKind::rate_plan}};
  if (!kind_name.empty()) {
    auto it = kinds.find(kind_name);
    if (it == kinds.end())
      ck.fail("study_kind \"" + kind_name + "\" is not one of snr-distribution, "
              "gsnr-vs-span, span-vs-length, cable-sweep, rate-plan");
    else
      cfg.kind = it->second;
  }

  const bool needs_photonics = !kind_name.empty() && kind_name != "snr-distribution" &&
                               kind_name != "rate-plan";
  for (const char* block : {"fiber", "amplifier", "grid"}) {
    const bool present = root.contains(block);
    if (needs_photonics && !present)
      ck.fail(std::string("config: study kind ") + kind_name + " requires block \"" +
              block + "\"");
    if (present && !root.at(block).is_object())
      ck.fail(std::string(block) + " must be an object");
  }
  if (root.contains("fiber") && root.at("fiber").is_object())
    cfg.fiber = parse_fiber(root.at("fiber"), ck);
  if (root.contains("amplifier") && root.at("amplifier").is_object())
    cfg.amplifier = parse_amplifier(root.at("amplifier"), ck);
  if (root.contains("grid") && root.at("grid").is_object())
    cfg.grid = parse_grid(root.at("grid"), ck);
  if (root.contains("feed") && root.at("feed").is_object())
    cfg.feed = parse_feed(root.at("feed"), ck);

  if (!root.contains("sweep") && cfg.kind != StudyKind::cable_sweep)
    ck.fail("config: missing required block \"sweep\"");
  const json sweep = root.contains("sweep") && root.at("sweep").is_object()
                         ? root.at("sweep")
                         : json::object();

  switch (cfg.kind) {
    case StudyKind::snr_distribution: {
      ck.keys(sweep, "sweep", {"snr1_db_values", "m_min", "m_max", "m_step"});
      SnrDistributionSweep s;
      s.snr1_db_values = ck.num_list(sweep, "sweep", "snr1_db_values", true);
      s.m_min = ck.integer(sweep, "sweep", "m_min", false, 1);
      s.m_max = ck.integer(sweep, "sweep", "m_max", true);
      s.m_step = ck.integer(sweep, "sweep", "m_step", false, 1);
      if (s.m_min < 1) ck.fail("sweep.m_min must be >= 1");
      if (s.m_step < 1) ck.fail("sweep.m_step must be >= 1");
      if (sweep.contains("m_max") && s.m_max < s.m_min)
        ck.fail("sweep.m_max must be >= sweep.m_min (non-empty range)");
      cfg.snr_distribution = s;
      break;
    }
    case StudyKind::gsnr_vs_span: {
      ck.keys(sweep, "sweep",
              {"total_length_km", "span_km_min", "span_km_max", "span_km_step",
               "backoff_db", "b2b_snr_db", "loop_noise_dbm", "loop_turn_km"});
      GsnrVsSpanSweep s;
      s.total_length_km = ck.num(sweep, "sweep", "total_length_km", true);
      s.span_km_min = ck.num(sweep, "sweep", "span_km_min", true);
      s.span_km_max = ck.num(sweep, "sweep", "span_km_max", true);
      s.span_km_step = ck.num(sweep, "sweep", "span_km_step", true);
      s.backoff_db = ck.num(sweep, "sweep", "backoff_db", false, 0.0);
      if (sweep.contains("b2b_snr_db"))
        s.b2b_snr_db = ck.num(sweep, "sweep", "b2b_snr_db", false, 0.0);
      if (sweep.contains("loop_noise_dbm"))
        s.loop_noise_dbm = ck.num(sweep, "sweep", "loop_noise_dbm", false, 0.0);
      s.loop_turn_km = ck.num(sweep, "sweep", "loop_turn_km", false, 300.0);
      ck.positive(s.total_length_km, "sweep.total_length_km");
      ck.positive(s.span_km_min, "sweep.span_km_min");
      ck.positive(s.span_km_step, "sweep.span_km_step");
      if (!(s.span_km_max >= s.span_km_min))
        ck.fail("sweep.span_km_max must be >= sweep.span_km_min (non-empty range)");
      if (!(s.backoff_db >= 0.0)) ck.fail("sweep.backoff_db must be >= 0");
      cfg.gsnr_vs_span = s;
      break;
    }
    case StudyKind::span_vs_length: {
      ck.keys(sweep, "sweep", {"baseline_span_km", "spatial_multiplier",
                               "total_length_km_values", "backoff_db"});
      SpanVsLengthSweep s;
      s.baseline_span_km = ck.num(sweep, "sweep", "baseline_span_km", true);
      s.spatial_multiplier = ck.num(sweep, "sweep", "spatial_multiplier", true);
      s.total_length_km_values = ck.num_list(sweep, "sweep", "total_length_km_values", true);
      s.backoff_db = ck.num(sweep, "sweep", "backoff_db", false, 2.0);
      ck.positive(s.baseline_span_km, "sweep.baseline_span_km");
      ck.positive(s.spatial_multiplier, "sweep.spatial_multiplier");
      ck.ordered(s.total_length_km_values, "sweep.total_length_km_values");
      for (double t : s.total_length_km_values)
        if (!(t > 0.0)) ck.fail("sweep.total_length_km_values must be positive");
      if (!(s.backoff_db >= 0.0)) ck.fail("sweep.backoff_db must be >= 0");
      cfg.span_vs_length = s;
      break;
    }
    case StudyKind::cable_sweep: {
      if (!root.contains("cable") || !root.at("cable").is_object())
        ck.fail("config: cable-sweep requires block \"cable\"");
      if (!root.contains("feed")) ck.fail("config: cable-sweep requires block \"feed\"");
      if (root.contains("sweep")) ck.fail("config: cable-sweep takes no \"sweep\" block");
      if (root.contains("cable") && root.at("cable").is_object()) {
        const json& c = root.at("cable");
        ck.keys(c, "cable", {"baseline_fiber_pairs", "baseline_span_km", "total_length_km",
                             "fiber_pair_max", "backoff_db"});
        CableStudyInputs in;
        in.baseline_fiber_pairs = ck.integer(c, "cable", "baseline_fiber_pairs", true);
        in.baseline_span_km = ck.num(c, "cable", "baseline_span_km", true);
        in.total_length_km = ck.num(c, "cable", "total_length_km", true);
        in.fiber_pair_max = ck.integer(c, "cable", "fiber_pair_max", true);
        in.backoff_db = ck.num(c, "cable", "backoff_db", false, 2.0);
        if (in.baseline_fiber_pairs < 1) ck.fail("cable.baseline_fiber_pairs must be >= 1");
        ck.positive(in.baseline_span_km, "cable.baseline_span_km");
        ck.positive(in.total_length_km, "cable.total_length_km");
        if (in.fiber_pair_max < in.baseline_fiber_pairs || in.fiber_pair_max > 64)
          ck.fail("cable.fiber_pair_max must lie in [baseline_fiber_pairs, 64]");
        if (!(in.backoff_db >= 0.0)) ck.fail("cable.backoff_db must be >= 0");
        if (cfg.fiber) in.fiber = *cfg.fiber;
        if (cfg.amplifier) in.amplifier = *cfg.amplifier;
        if (cfg.grid) in.grid = *cfg.grid;
        cfg.cable = in;
      }
      if (root.contains("calibration")) {
        if (!root.at("calibration").is_object()) {
          ck.fail("calibration must be an object");
        } else {
          const json& cal = root.at("calibration");
          ck.keys(cal, "calibration", {"boundary_fiber_pairs", "boundary_voltage_kv"});
          CableSweepCalibration c;
          c.boundary_fiber_pairs = ck.integer(cal, "calibration", "boundary_fiber_pairs", true);
          c.boundary_voltage_kv = ck.num(cal, "calibration", "boundary_voltage_kv", true);
          ck.positive(c.boundary_voltage_kv, "calibration.boundary_voltage_kv");
          cfg.calibration = c;
        }
      }
      break;
    }
    case StudyKind::rate_plan: {
      ck.keys(sweep, "sweep", {"snr_db_values", "symbol_rate_gbaud", "margin_db"});
      RatePlanSweep s;
      s.snr_db_values = ck.num_list(sweep, "sweep", "snr_db_values", true);
      s.symbol_rate_gbaud = ck.num(sweep, "sweep", "symbol_rate_gbaud", true);
      s.margin_db = ck.num(sweep, "sweep", "margin_db", false, 1.0);
      ck.positive(s.symbol_rate_gbaud, "sweep.symbol_rate_gbaud");
      if (!(s.margin_db >= 0.0)) ck.fail("sweep.margin_db must be >= 0");
      cfg.rate_plan = s;
      break;
    }
  }

  if (!root.contains("output") || !root.at("output").is_object()) {
    ck.fail("config: missing required block \"output\"");
  } else {
    const json& out = root.at("output");
    ck.keys(out, "output", {"table_path", "metadata_path"});
    if (!out.contains("table_path") || !out.at("table_path").is_string())
      ck.fail("output.table_path must be a string");
    else
      cfg.table_path = out.at("table_path").get<std::string>();
    if (out.contains("metadata_path")) {
      if (!out.at("metadata_path").is_string())
        ck.fail("output.metadata_path must be a string");
      else
        cfg.metadata_path = out.at("metadata_path").get<std::string>();
    } else {
      cfg.metadata_path = cfg.table_path + ".meta.json";
    }
  }

  if (cfg.amplifier) {
    for (const auto& w : warnings(*cfg.amplifier)) cfg.warnings.push_back(w);
  }

  if (!ck.issues.empty()) throw config_error(std::move(ck.issues));
  return cfg;
}

StudyConfig validate_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error({"cannot open config file: " + path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return validate_config(ss.str());
}

namespace {

LinkConfig geometry_from(const StudyConfig& cfg) {
  LinkConfig link;
  link.fiber = *cfg.fiber;
  link.amplifier = *cfg.amplifier;
  link.grid = *cfg.grid;
  link.per_channel_launch_power_w = 1e-3;
  link.span_length_km = 50.0;
  link.span_count = 1;
  return link;
}

Table run_snr_distribution(const StudyConfig& cfg) {
  const auto& s = *cfg.snr_distribution;
  Table t;
  t.header = {"snr1_db", "m", "snr_m_db", "snr_m_approx_db"};
  for (double s1_db : s.snr1_db_values) {
    const double s1 = db_to_linear(s1_db);
    for (int m = s.m_min; m <= s.m_max; m += s.m_step) {
      const double exact = required_snr_m(s1, m);
      const double approx = required_snr_m_approx(s1, m);
      t.rows.push_back({fmt(s1_db), std::to_string(m), fmt(linear_to_db(exact)),
                        fmt(linear_to_db(approx))});
    }
  }
  return t;
}

Table run_gsnr_vs_span(const StudyConfig& cfg) {
  const auto& s = *cfg.gsnr_vs_span;
  LinkConfig geom = geometry_from(cfg);
  if (s.b2b_snr_db) geom.b2b_snr_linear = db_to_linear(*s.b2b_snr_db);
  if (s.loop_noise_dbm) geom.loop_noise_power_w = dbm_to_watts(*s.loop_noise_dbm);
  geom.loop_turn_km = s.loop_turn_km;

  std::vector<double> spans;
  for (double v = s.span_km_min; v <= s.span_km_max + 1e-9; v += s.span_km_step)
    spans.push_back(v);
  const auto curve = max_gsnr_curve(geom, spans, s.total_length_km, s.backoff_db);

  Table t;
  t.header = {"span_km", "span_count", "optimal_power_dbm", "gsnr_db", "status"};
  for (const SpanGsnrPoint& p : curve) {
    const bool ok = !std::isnan(p.gsnr_db);
    t.rows.push_back({fmt(p.span_km), std::to_string(p.span_count),
                      ok ? fmt(watts_to_dbm(p.power_w)) : "nan",
                      ok ? fmt(p.gsnr_db) : "nan",
                      ok ? "ok" : "infeasible-geometry"});
  }
  return t;
}

Table run_span_vs_length(const StudyConfig& cfg) {
  const auto& s = *cfg.span_vs_length;
  const LinkConfig geom = geometry_from(cfg);

  Table t;
  t.header = {"total_length_km", "baseline_gsnr_db", "target_gsnr_db", "span_km",
              "achieved_gsnr_db", "launch_power_dbm", "status"};
  for (double total : s.total_length_km_values) {
    LinkConfig base = geom;
    base.span_length_km = s.baseline_span_km;
    base.span_count =
        std::max(1, static_cast<int>(std::round(total / s.baseline_span_km)));
    try {
      const PowerSweepResult bl = optimize_launch_power(base, s.backoff_db);
      const double base_op = bl.optimal_gsnr.gsnr_modified_linear;
      const double target = required_snr_m(base_op, s.spatial_multiplier);
      const SpanSolveResult sol = solve_span_for_target(
          geom, total, target, s.backoff_db, SpanSnapPolicy::none);
      t.rows.push_back({fmt(total), fmt(linear_to_db(base_op)),
                        fmt(linear_to_db(target)), fmt(sol.span_length_km),
                        fmt(sol.achieved_gsnr_db), fmt(watts_to_dbm(sol.launch_power_w)),
                        "ok"});
    } catch (const target_too_high_error&) {
      t.rows.push_back({fmt(total), "nan", "nan", "nan", "nan", "nan", "target-too-high"});
    } catch (const infeasible_geometry_error&) {
      t.rows.push_back({fmt(total), "nan", "nan", "nan", "nan", "nan",
                        "infeasible-geometry"});
    }
  }
  return t;
}

Table run_cable_sweep(const StudyConfig& cfg, PowerFeedSpec feed,
                      std::optional<FeedCalibration>& calibration_out) {
  CableStudyInputs in = *cfg.cable;
  if (cfg.calibration) {
    const FeedCalibration cal =
        calibrate_feed(in, feed, cfg.calibration->boundary_fiber_pairs,
                       cfg.calibration->boundary_voltage_kv * 1e3);
    feed.eo_efficiency = cal.fitted_eo_efficiency;
    calibration_out = cal;
  }
  const DesignSweep sweep = design_sweep(in, feed);

  Table t;
  t.header = {"fiber_pairs", "repeater_count", "amplifier_count", "span_km",
              "per_channel_power_dbm", "required_gsnr_db", "per_fiber_gsnr_db",
              "capacity_tbps", "power_required_w", "power_available_w", "power_margin_w",
              "power_feasible", "min_amplifier", "selected", "status"};
  for (const CableDesign& d : sweep.designs) {
    if (d.status != "ok") {
      t.rows.push_back({std::to_string(d.fiber_pairs), "nan", "nan", "nan", "nan",
                        fmt(d.required_gsnr_db), "nan", "nan", "nan", "nan", "nan", "0",
                        "0", "0", d.status});
      continue;
    }
    t.rows.push_back({std::to_string(d.fiber_pairs), std::to_string(d.repeater_count),
                      std::to_string(d.amplifier_count), fmt(d.span_length_km),
                      fmt(watts_to_dbm(d.per_channel_power_w)), fmt(d.required_gsnr_db),
                      fmt(d.per_fiber_gsnr_db), fmt(d.cable_capacity_bps / 1e12),
                      fmt(d.power_required_w), fmt(d.power_available_w),
                      fmt(d.power_margin_w), d.power_feasible ? "1" : "0",
                      d.is_min_amplifier ? "1" : "0", d.is_selected ? "1" : "0",
                      d.status});
  }
  return t;
}

Table run_rate_plan(const StudyConfig& cfg) {
  const auto& s = *cfg.rate_plan;
  RateAdapterOptions opts;
  opts.margin_db = s.margin_db;

  Table t;
  t.header = {"snr_db", "format", "entropy_bits", "overhead_percent", "code_rate",
              "air_bits", "mi_bits", "throughput_gbps", "achievable"};
  for (double snr_db : s.snr_db_values) {
    const RatePlan p = best_rate_plan(db_to_linear(snr_db), s.symbol_rate_gbaud * 1e9, opts);
    if (!p.achievable) {
      t.rows.push_back({fmt(snr_db), "none", "nan", "nan", "nan", "nan", "nan", "0", "0"});
      continue;
    }
    t.rows.push_back({fmt(snr_db), format_name(p.format), fmt(p.entropy_bits),
                      std::to_string(p.overhead.percent),
                      std::to_string(p.overhead.rate_numerator) + "/" +
                          std::to_string(p.overhead.rate_denominator),
                      fmt(p.air_bits_per_symbol), fmt(p.mi_bits_per_symbol),
                      fmt(p.net_throughput_bps / 1e9), "1"});
  }
  return t;
}

}  // namespace

StudyReport run_study(const StudyConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  Table table;
  std::optional<FeedCalibration> calibration;
  PowerFeedSpec feed = cfg.feed ? *cfg.feed : PowerFeedSpec{};
  switch (cfg.kind) {
    case StudyKind::snr_distribution: table = run_snr_distribution(cfg); break;
    case StudyKind::gsnr_vs_span: table = run_gsnr_vs_span(cfg); break;
    case StudyKind::span_vs_length: table = run_span_vs_length(cfg); break;
    case StudyKind::cable_sweep: table = run_cable_sweep(cfg, feed, calibration); break;
    case StudyKind::rate_plan: table = run_rate_plan(cfg); break;
  }
  table.write(cfg.table_path);

  json meta;
  meta["tool"] = "linkplan study";
  meta["version"] = tool_version;
  meta["study_kind"] = study_kind_name(cfg.kind);
  json resolved = json::object();
  if (cfg.fiber) resolved["fiber"] = fiber_json(*cfg.fiber);
  if (cfg.amplifier)
    resolved["amplifier"] = {{"noise_figure_db", cfg.amplifier->noise_figure_db},
                             {"quantum_limit_warning_db", cfg.amplifier->quantum_limit_warning_db}};
  if (cfg.grid) resolved["grid"] = grid_json(*cfg.grid);
  if (cfg.feed || cfg.kind == StudyKind::cable_sweep) resolved["feed"] = feed_json(feed);
  if (cfg.cable)
    resolved["cable"] = {{"baseline_fiber_pairs", cfg.cable->baseline_fiber_pairs},
                         {"baseline_span_km", cfg.cable->baseline_span_km},
                         {"total_length_km", cfg.cable->total_length_km},
                         {"fiber_pair_max", cfg.cable->fiber_pair_max},
                         {"backoff_db", cfg.cable->backoff_db}};
  if (cfg.rate_plan)
    resolved["sweep"] = {{"snr_db_values", cfg.rate_plan->snr_db_values},
                         {"symbol_rate_gbaud", cfg.rate_plan->symbol_rate_gbaud},
                         {"margin_db", cfg.rate_plan->margin_db}};
  meta["resolved"] = resolved;
  if (calibration) {
    meta["calibration"] = {{"theta_ohm_per_km", calibration->theta_ohm_per_km},
                           {"theta_window_low", calibration->theta_window_low},
                           {"theta_window_high", calibration->theta_window_high},
                           {"fitted_eo_efficiency", calibration->fitted_eo_efficiency},
                           {"boundary_fiber_pairs", calibration->boundary_fiber_pairs},
                           {"boundary_voltage_kv", calibration->boundary_voltage_v / 1e3}};
  } else {
    meta["calibration"] = nullptr;
  }
  if (!cfg.warnings.empty()) meta["warnings"] = cfg.warnings;
  meta["rows"] = table.rows.size();
  meta["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ofstream mout(cfg.metadata_path, std::ios::binary);
  if (!mout) throw error("cannot open metadata path: " + cfg.metadata_path);
  mout << meta.dump(2) << "\n";

  StudyReport report;
  report.kind = cfg.kind;
  report.table_path = cfg.table_path;
  report.metadata_path = cfg.metadata_path;
  report.rows = static_cast<int>(table.rows.size());
  report.calibration = calibration;
  return report;
}

}  // namespace linkplan
