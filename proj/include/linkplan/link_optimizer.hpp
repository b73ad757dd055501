#pragma once

#include <vector>

#include "linkplan/photonic.hpp"

namespace linkplan {

struct PowerGridOptions {
  double min_dbm = -12.0;
  double max_dbm = 12.0;
  double step_db = 0.25;
  double refine_tolerance_db = 0.01;
  bool parallel = true;
};

struct PowerSample {
  double power_w = 0.0;
  double gsnr_db = 0.0;
};

struct PowerSweepResult {
  double optimal_power_w = 0.0;       // at the requested backoff
  GsnrBreakdown optimal_gsnr;         // breakdown at optimal_power_w
  double peak_power_w = 0.0;          // argmax of the sweep
  double peak_gsnr_db = 0.0;
  std::vector<PowerSample> samples;   // feasible grid points, ordered by power
};

/// Scan per-channel launch power, refine the peak, then back off down the
/// lower-power side of the peak by backoff_db (0 = operate at the peak).
/// The launch power in `geometry` is ignored.
PowerSweepResult optimize_launch_power(const LinkConfig& geometry, double backoff_db,
                                       const PowerGridOptions& options = {});

struct SpanGsnrPoint {
  double span_km = 0.0;
  int span_count = 0;
  double gsnr_db = 0.0;     // peak GSNR, less backoff when requested
  double power_w = 0.0;
};

/// Peak GSNR for each span length with N_sp = round(total/span).
std::vector<SpanGsnrPoint> max_gsnr_curve(const LinkConfig& geometry,
                                          const std::vector<double>& span_lengths_km,
                                          double total_length_km,
                                          double backoff_db = 0.0,
                                          const PowerGridOptions& options = {});

enum class SpanSnapPolicy {
  none,                // keep the continuous solution (fractional span count)
  integer_span_count,  // shortest integer-count span meeting the target
};

struct SpanSolveResult {
  double span_length_km = 0.0;
  double span_count = 0.0;        // integer after snapping
  double achieved_gsnr_db = 0.0;  // at the requested backoff
  double launch_power_w = 0.0;
  double backoff_db = 0.0;
};

struct SpanSolveOptions {
  double min_span_km = 25.0;
  double max_span_km = 400.0;
  double span_tolerance_km = 0.01;
  // Accept an integer snap whose achieved GSNR is within this of the target.
  double snap_tolerance_db = 0.01;
  PowerGridOptions power;
};

/// Largest span length whose achievable GSNR (at backoff_db below the peak)
/// still meets target_gsnr_linear over total_length_km. Bisection on the
/// continuous relaxation N = total/span, optionally snapped to an integer
/// span count on the safe (shorter-span) side.
SpanSolveResult solve_span_for_target(const LinkConfig& geometry, double total_length_km,
                                      double target_gsnr_linear, double backoff_db,
                                      SpanSnapPolicy policy = SpanSnapPolicy::integer_span_count,
                                      const SpanSolveOptions& options = {});

namespace detail {
// One point of the max-GSNR curve; shared with the span-curve kernel.
SpanGsnrPoint curve_point(const LinkConfig& geometry, double total_length_km,
                          double backoff_db, double span_km);
}  // namespace detail

}  // namespace linkplan
