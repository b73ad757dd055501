#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkplan/cable_designer.hpp"
#include "linkplan/photonic.hpp"
#include "linkplan/rate_adapter.hpp"

namespace linkplan {

inline constexpr const char* tool_version = "1.0.0";

enum class StudyKind {
  snr_distribution,  // required SNR_m vs spatial channel count
  gsnr_vs_span,      // peak GSNR vs amplifier spacing
  span_vs_length,    // capacity-preserving span length vs total distance
  cable_sweep,       // fiber-pair sweep under power-feed limits
  rate_plan,         // best (format, entropy, overhead) per SNR
};

std::string study_kind_name(StudyKind kind);

struct SnrDistributionSweep {
  std::vector<double> snr1_db_values;
  int m_min = 1;
  int m_max = 0;
  int m_step = 1;
};

struct GsnrVsSpanSweep {
  double total_length_km = 0.0;
  double span_km_min = 0.0;
  double span_km_max = 0.0;
  double span_km_step = 0.0;
  double backoff_db = 0.0;
  std::optional<double> b2b_snr_db;
  std::optional<double> loop_noise_dbm;
  double loop_turn_km = 300.0;
};

struct SpanVsLengthSweep {
  double baseline_span_km = 0.0;
  double spatial_multiplier = 0.0;
  std::vector<double> total_length_km_values;
  double backoff_db = 2.0;
};

struct CableSweepCalibration {
  int boundary_fiber_pairs = 0;
  double boundary_voltage_kv = 0.0;
};

struct RatePlanSweep {
  std::vector<double> snr_db_values;
  double symbol_rate_gbaud = 0.0;
  double margin_db = 1.0;
};

struct StudyConfig {
  StudyKind kind = StudyKind::snr_distribution;
  std::optional<FiberSpec> fiber;
  std::optional<AmplifierSpec> amplifier;
  std::optional<WdmGrid> grid;
  std::optional<PowerFeedSpec> feed;
  std::optional<CableStudyInputs> cable;
  std::optional<CableSweepCalibration> calibration;
  std::optional<SnrDistributionSweep> snr_distribution;
  std::optional<GsnrVsSpanSweep> gsnr_vs_span;
  std::optional<SpanVsLengthSweep> span_vs_length;
  std::optional<RatePlanSweep> rate_plan;
  std::string table_path;
  std::string metadata_path;
  std::vector<std::string> warnings;
};

/// Parses and validates config text; throws config_error listing every
/// violation at once. Unknown keys are hard errors.
StudyConfig validate_config(const std::string& json_text);
StudyConfig validate_config_file(const std::string& path);

struct StudyReport {
  StudyKind kind{};
  std::string table_path;
  std::string metadata_path;
  int rows = 0;
  std::optional<FeedCalibration> calibration;
};

/// Runs the study and writes the result table plus a run-metadata record.
/// Identical config -> byte-identical table. Per-row numerical
/// infeasibility is recorded in-row; failures of required anchor points
/// (baseline, calibration) throw.
StudyReport run_study(const StudyConfig& config);

}  // namespace linkplan
