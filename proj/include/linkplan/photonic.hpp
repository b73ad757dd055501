#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkplan/units.hpp"

namespace linkplan {

/// Physical constants of one fiber type.
struct FiberSpec {
  double loss_db_per_km = 0.0;         // attenuation, dB/km
  double gamma_per_w_km = 0.0;         // nonlinear coefficient, 1/(W km)
  double dispersion_ps_nm_km = 0.0;    // chromatic dispersion D
  double reference_wavelength_m = 1550e-9;
  double excess_loss_db_per_span = 0.0;

  double alpha_linear_per_km() const;
  /// beta2 = -D lambda^2 / (2 pi c); negative when D > 0.
  double beta2_s2_per_m() const;
};

void validate(const FiberSpec& fiber);

/// EDFA in constant-output-power mode (the only supported mode).
struct AmplifierSpec {
  double noise_figure_db = 4.5;
  double quantum_limit_warning_db = 3.0;

  /// Spontaneous-emission factor, high-gain relation n_sp = 10^(NF/10)/2.
  double spontaneous_emission_factor() const;
};

void validate(const AmplifierSpec& amp);
std::vector<std::string> warnings(const AmplifierSpec& amp);

struct WdmGrid {
  int channel_count = 0;
  double symbol_rate_hz = 0.0;
  double channel_spacing_hz = 0.0;
  double center_frequency_hz = 0.0;

  double total_bandwidth_hz() const { return channel_count * channel_spacing_hz; }
};

void validate(const WdmGrid& grid);

/// One fiber channel: geometry, grid, amplification and launch power.
struct LinkConfig {
  FiberSpec fiber;
  AmplifierSpec amplifier;
  WdmGrid grid;
  double span_length_km = 0.0;
  int span_count = 1;
  double per_channel_launch_power_w = 0.0;
  std::optional<double> b2b_snr_linear;      // transceiver SNR ceiling
  std::optional<double> loop_noise_power_w;  // per loop turn, per channel
  double loop_turn_km = 300.0;

  double total_length_km() const { return span_length_km * span_count; }
};

void validate(const LinkConfig& link);

/// End-of-link GSNR with its per-span ingredients.
struct GsnrBreakdown {
  double gain_linear = 0.0;    // droop-corrected amplifier gain
  double p_ase_w = 0.0;        // per channel, per span
  double p_nl_w = 0.0;         // per channel, per span
  double eta = 0.0;            // per-span survival factor
  double gsnr_linear = 0.0;
  double gsnr_db = 0.0;
  double gsnr_modified_linear = 0.0;  // with b2b / loop terms when present
};

/// Gain that exactly restores the span launch power while amplifying the
/// accumulated ASE (droop): closed-form solution of the coupled
/// gain/ASE pair. G is slightly below pure loss compensation 1/A.
double droop_gain(const LinkConfig& link);

/// 2 h f0 n_sp (G - 1) R_s, per channel, per span, both polarizations.
double ase_power(const LinkConfig& link, double gain_linear);

/// Incoherent GN-model nonlinear distortion power per channel per span.
/// The cubic term uses the aggregate WDM power spectral density
/// N_ch * P_ch / B_WDM.
double nonlinear_power(const LinkConfig& link);

GsnrBreakdown evaluate_gsnr(const LinkConfig& link);

/// Same model with span length / count / power overriding the config.
/// Fractional span counts are the continuous relaxation used by the span
/// solver; the physical model is the integer case.
GsnrBreakdown evaluate_gsnr_at(const LinkConfig& base, double span_length_km,
                               double span_count, double launch_power_w);

}  // namespace linkplan
