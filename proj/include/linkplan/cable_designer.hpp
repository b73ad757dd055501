#pragma once

#include <string>
#include <vector>

#include "linkplan/link_optimizer.hpp"
#include "linkplan/photonic.hpp"

namespace linkplan {

/// Electrical power-feed parameters of the cable.
struct PowerFeedSpec {
  double voltage_v = 15000.0;             // single-ended feed voltage
  double cable_resistance_ohm_per_km = 1.0;
  double control_fraction = 0.10;         // epsilon, electrical share for control
  double eo_efficiency = 0.02;            // electrical-to-optical conversion
};

void validate(const PowerFeedSpec& feed);

/// Max-power-transfer budget V^2/(4 L R0) shared by the repeaters.
double repeater_power_available(const PowerFeedSpec& feed, double total_length_km,
                                int repeater_count);

/// 2 N_fp N_ch P_ch / ((1 - eps) eta_eo) per repeater.
double repeater_power_required(int fiber_pairs, int channel_count,
                               double per_channel_power_w, const PowerFeedSpec& feed);

/// floor[(1-eps) eta_eo V^2 / (8 L R0 N_rep N_ch P_ch)]; 0 when even one
/// fiber pair is unsupportable.
int max_fiber_pairs(const PowerFeedSpec& feed, double total_length_km,
                    int repeater_count, int channel_count, double per_channel_power_w);

struct CableDesign {
  int fiber_pairs = 0;
  int repeater_count = 0;
  double span_length_km = 0.0;
  int span_count = 0;             // equals repeater_count
  double per_channel_power_w = 0.0;
  long amplifier_count = 0;       // 2 * fiber_pairs * repeater_count
  double required_gsnr_db = 0.0;  // per-fiber target from the capacity split
  double per_fiber_gsnr_db = 0.0; // achieved at the operating backoff
  double cable_capacity_bps = 0.0;
  double power_required_w = 0.0;
  double power_available_w = 0.0;
  double power_margin_w = 0.0;
  bool power_feasible = false;
  bool is_selected = false;       // fewest repeaters among feasible designs
  bool is_min_amplifier = false;
  std::string status = "ok";      // or the error tag for this fiber-pair count
};

struct CableStudyInputs {
  FiberSpec fiber;
  AmplifierSpec amplifier;
  WdmGrid grid;
  int baseline_fiber_pairs = 0;
  double baseline_span_km = 0.0;
  double total_length_km = 0.0;
  int fiber_pair_max = 0;
  double backoff_db = 2.0;
  SpanSolveOptions solve;
};

struct DesignSweep {
  int baseline_span_count = 0;
  double baseline_span_km = 0.0;
  double baseline_peak_gsnr_db = 0.0;
  double baseline_gsnr_db = 0.0;       // at the operating backoff
  double target_capacity_bps = 0.0;
  std::vector<CableDesign> designs;    // ordered by fiber_pairs
  int selected_fiber_pairs = -1;       // -1 when no design is power-feasible
  int min_amplifier_fiber_pairs = -1;
};

/// Full capacity-preserving sweep over fiber-pair counts with power-feed
/// feasibility at each point.
DesignSweep design_sweep(const CableStudyInputs& inputs, const PowerFeedSpec& feed);

struct FeedCalibration {
  // theta = R0/((1-eps) eta_eo); feasibility depends on the feed constants
  // only through this scalar.
  double theta_ohm_per_km = 0.0;
  double theta_window_low = 0.0;   // exclusive
  double theta_window_high = 0.0;  // inclusive
  double fitted_eo_efficiency = 0.0;
  int boundary_fiber_pairs = 0;
  double boundary_voltage_v = 0.0;
};

/// Fits the single feed scalar so the feasibility boundary at
/// boundary_voltage_v lands exactly at boundary_fiber_pairs (geometric
/// midpoint of the admissible window). Returns the calibration; apply it by
/// replacing feed.eo_efficiency with fitted_eo_efficiency.
FeedCalibration calibrate_feed(const CableStudyInputs& inputs, const PowerFeedSpec& feed,
                               int boundary_fiber_pairs, double boundary_voltage_v);

}  // namespace linkplan
