#include "linkplan/cable_designer.hpp"

#include <algorithm>
#include <cmath>

#include "linkplan/capacity.hpp"
#include "linkplan/errors.hpp"

namespace linkplan {

void validate(const PowerFeedSpec& feed) {
  std::vector<std::string> issues;
  if (!(feed.voltage_v > 0.0)) issues.push_back("feed.voltage_v must be > 0");
  if (!(feed.cable_resistance_ohm_per_km > 0.0))
    issues.push_back("feed.cable_resistance_ohm_per_km must be > 0");
  if (!(feed.control_fraction >= 0.0 && feed.control_fraction < 1.0))
    issues.push_back("feed.control_fraction must lie in [0, 1)");
  if (!(feed.eo_efficiency > 0.0 && feed.eo_efficiency <= 1.0))
    issues.push_back("feed.eo_efficiency must lie in (0, 1]");
  if (!issues.empty()) throw config_error(std::move(issues));
}

double repeater_power_available(const PowerFeedSpec& feed, double total_length_km,
                                int repeater_count) {
  if (!(total_length_km > 0.0) || repeater_count < 1)
    throw domain_error("repeater_power_available needs positive geometry");
  return feed.voltage_v * feed.voltage_v /
         (4.0 * total_length_km * feed.cable_resistance_ohm_per_km * repeater_count);
}

double repeater_power_required(int fiber_pairs, int channel_count,
                               double per_channel_power_w, const PowerFeedSpec& feed) {
  if (fiber_pairs < 1 || channel_count < 1 || !(per_channel_power_w > 0.0))
    throw domain_error("repeater_power_required needs positive arguments");
  return 2.0 * fiber_pairs * channel_count * per_channel_power_w /
         ((1.0 - feed.control_fraction) * feed.eo_efficiency);
}

int max_fiber_pairs(const PowerFeedSpec& feed, double total_length_km,
                    int repeater_count, int channel_count, double per_channel_power_w) {
  if (!(per_channel_power_w > 0.0) || channel_count < 1)
    throw domain_error("max_fiber_pairs needs positive arguments");
  const double n =
      (1.0 - feed.control_fraction) * feed.eo_efficiency * feed.voltage_v * feed.voltage_v /
      (8.0 * total_length_km * feed.cable_resistance_ohm_per_km * repeater_count *
       channel_count * per_channel_power_w);
  return n < 1.0 ? 0 : static_cast<int>(std::floor(n));
}

namespace {

LinkConfig geometry_of(const CableStudyInputs& in) {
  LinkConfig link;
  link.fiber = in.fiber;
  link.amplifier = in.amplifier;
  link.grid = in.grid;
  link.span_length_km = in.baseline_span_km;
  link.span_count = std::max(1, static_cast<int>(std::round(in.total_length_km /
                                                            in.baseline_span_km)));
  link.per_channel_launch_power_w = 1e-3;  // placeholder; sweeps override it
  return link;
}

void check_inputs(const CableStudyInputs& in) {
  validate(geometry_of(in));
  std::vector<std::string> issues;
  if (in.baseline_fiber_pairs < 1) issues.push_back("cable.baseline_fiber_pairs must be >= 1");
  if (!(in.baseline_span_km > 0.0)) issues.push_back("cable.baseline_span_km must be > 0");
  if (!(in.total_length_km > in.baseline_span_km))
    issues.push_back("cable.total_length_km must exceed the baseline span");
  if (in.fiber_pair_max < in.baseline_fiber_pairs || in.fiber_pair_max > 64)
    issues.push_back("cable.fiber_pair_max must lie in [baseline_fiber_pairs, 64]");
  if (!(in.backoff_db >= 0.0)) issues.push_back("cable.backoff_db must be >= 0");
  if (!issues.empty()) throw config_error(std::move(issues));
}

struct Baseline {
  int span_count;
  double span_km;
  double peak_gsnr_db;
  double op_gsnr_db;
  double op_gsnr_linear;
};

Baseline baseline_point(const CableStudyInputs& in, const LinkConfig& geom,
                        const PowerGridOptions& power) {
  Baseline b{};
  b.span_count = geom.span_count;
  b.span_km = in.total_length_km / b.span_count;
  LinkConfig snapped = geom;
  snapped.span_length_km = b.span_km;
  const PowerSweepResult sweep = optimize_launch_power(snapped, in.backoff_db, power);
  b.peak_gsnr_db = sweep.peak_gsnr_db;
  b.op_gsnr_linear = sweep.optimal_gsnr.gsnr_modified_linear;
  b.op_gsnr_db = linear_to_db(b.op_gsnr_linear);
  return b;
}

}  // namespace

DesignSweep design_sweep(const CableStudyInputs& inputs, const PowerFeedSpec& feed) {
  check_inputs(inputs);
  validate(feed);

  const LinkConfig geom = geometry_of(inputs);
  PowerGridOptions serial_power = inputs.solve.power;
  serial_power.parallel = false;

  DesignSweep sweep;
  const Baseline base = baseline_point(inputs, geom, inputs.solve.power);
  sweep.baseline_span_count = base.span_count;
  sweep.baseline_span_km = base.span_km;
  sweep.baseline_peak_gsnr_db = base.peak_gsnr_db;
  sweep.baseline_gsnr_db = base.op_gsnr_db;
  sweep.target_capacity_bps =
      inputs.baseline_fiber_pairs *
      shannon_capacity(base.op_gsnr_linear, inputs.grid.total_bandwidth_hz(), 2);

  const int n_designs = inputs.fiber_pair_max - inputs.baseline_fiber_pairs + 1;
  sweep.designs.assign(n_designs, CableDesign{});

  SpanSolveOptions solve = inputs.solve;
  solve.power = serial_power;  // inner solves stay serial under the outer loop

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n_designs; ++i) {
    const int nfp = inputs.baseline_fiber_pairs + i;
    CableDesign& d = sweep.designs[i];
    d.fiber_pairs = nfp;
    const double m = static_cast<double>(nfp) / inputs.baseline_fiber_pairs;
    const double required = required_snr_m(base.op_gsnr_linear, m);
    d.required_gsnr_db = linear_to_db(required);
    try {
      const SpanSolveResult sol =
          solve_span_for_target(geom, inputs.total_length_km, required, inputs.backoff_db,
                                SpanSnapPolicy::integer_span_count, solve);
      d.span_count = static_cast<int>(std::lround(sol.span_count));
      d.repeater_count = d.span_count;
      d.span_length_km = sol.span_length_km;
      d.per_channel_power_w = sol.launch_power_w;
      d.per_fiber_gsnr_db = sol.achieved_gsnr_db;
      d.amplifier_count = 2L * nfp * d.repeater_count;
      d.cable_capacity_bps =
          nfp * shannon_capacity(db_to_linear(sol.achieved_gsnr_db),
                                 inputs.grid.total_bandwidth_hz(), 2);
      d.power_required_w =
          repeater_power_required(nfp, inputs.grid.channel_count, sol.launch_power_w, feed);
      d.power_available_w =
          repeater_power_available(feed, inputs.total_length_km, d.repeater_count);
      d.power_margin_w = d.power_available_w - d.power_required_w;
      d.power_feasible = d.power_margin_w >= 0.0;
      d.status = "ok";
    } catch (const error&) {
      d.status = "target-too-high";
      d.power_feasible = false;
    }
  }

  // Selection: fewest repeaters among power-feasible designs, then fewest
  // amplifiers, then fewest fiber pairs.
  const CableDesign* selected = nullptr;
  const CableDesign* min_amp = nullptr;
  for (const CableDesign& d : sweep.designs) {
    if (d.status != "ok") continue;
    if (!min_amp || d.amplifier_count < min_amp->amplifier_count) min_amp = &d;
    if (!d.power_feasible) continue;
    if (!selected || d.repeater_count < selected->repeater_count ||
        (d.repeater_count == selected->repeater_count &&
         (d.amplifier_count < selected->amplifier_count ||
          (d.amplifier_count == selected->amplifier_count &&
           d.fiber_pairs < selected->fiber_pairs))))
      selected = &d;
  }
  for (CableDesign& d : sweep.designs) {
    d.is_selected = selected && d.fiber_pairs == selected->fiber_pairs;
    d.is_min_amplifier = min_amp && d.fiber_pairs == min_amp->fiber_pairs;
  }
  sweep.selected_fiber_pairs = selected ? selected->fiber_pairs : -1;
  sweep.min_amplifier_fiber_pairs = min_amp ? min_amp->fiber_pairs : -1;
  return sweep;
}

FeedCalibration calibrate_feed(const CableStudyInputs& inputs, const PowerFeedSpec& feed,
                               int boundary_fiber_pairs, double boundary_voltage_v) {
  check_inputs(inputs);
  validate(feed);
  if (boundary_fiber_pairs < inputs.baseline_fiber_pairs ||
      boundary_fiber_pairs >= inputs.fiber_pair_max)
    throw config_error({"calibration boundary must lie inside the swept fiber-pair range"});

  // Feasibility depends on the feed constants only through
  // theta = R0/((1-eps) eta_eo): a design is feasible iff
  // 8 N_fp N_ch P_ch L N_rep theta <= V^2. The sweep itself is
  // feed-independent, so run it once and read the admissible theta window.
  PowerFeedSpec probe = feed;
  probe.voltage_v = boundary_voltage_v;
  const DesignSweep sweep = design_sweep(inputs, probe);

  auto theta_max = [&](const CableDesign& d) {
    return boundary_voltage_v * boundary_voltage_v /
           (8.0 * d.fiber_pairs * inputs.grid.channel_count * d.per_channel_power_w *
            inputs.total_length_km * d.repeater_count);
  };

  const CableDesign* at = nullptr;
  const CableDesign* next = nullptr;
  for (const CableDesign& d : sweep.designs) {
    if (d.status != "ok") continue;
    if (d.fiber_pairs == boundary_fiber_pairs) at = &d;
    if (d.fiber_pairs == boundary_fiber_pairs + 1) next = &d;
  }
  if (!at || !next)
    throw infeasible_geometry_error("calibration boundary designs are unsolvable");

  FeedCalibration cal;
  cal.boundary_fiber_pairs = boundary_fiber_pairs;
  cal.boundary_voltage_v = boundary_voltage_v;
  cal.theta_window_high = theta_max(*at);
  cal.theta_window_low = theta_max(*next);
  if (!(cal.theta_window_low < cal.theta_window_high))
    throw infeasible_geometry_error(
        "no feed scalar puts the feasibility boundary at the requested fiber-pair count");
  cal.theta_ohm_per_km = std::sqrt(cal.theta_window_low * cal.theta_window_high);
  cal.fitted_eo_efficiency = feed.cable_resistance_ohm_per_km /
                             ((1.0 - feed.control_fraction) * cal.theta_ohm_per_km);
  return cal;
}

}  // namespace linkplan
