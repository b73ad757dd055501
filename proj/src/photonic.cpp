#include "linkplan/photonic.hpp"

#include <cmath>

#include "linkplan/errors.hpp"

namespace linkplan {

double FiberSpec::alpha_linear_per_km() const {
  return loss_db_per_km * std::log(10.0) / 10.0;
}

double FiberSpec::beta2_s2_per_m() const {
  const double d_si = dispersion_ps_nm_km * 1e-6;  // ps/(nm km) -> s/m^2
  return -d_si * reference_wavelength_m * reference_wavelength_m /
         (2.0 * M_PI * light_speed_m_s);
}

void validate(const FiberSpec& fiber) {
  std::vector<std::string> issues;
  if (!(fiber.loss_db_per_km > 0.0)) issues.push_back("fiber.loss_db_per_km must be > 0");
  if (!(fiber.gamma_per_w_km >= 0.0)) issues.push_back("fiber.gamma_per_w_km must be >= 0");
  if (!(fiber.reference_wavelength_m > 1.2e-6 && fiber.reference_wavelength_m < 1.7e-6))
    issues.push_back("fiber.reference_wavelength_m must lie in (1.2e-6, 1.7e-6)");
  if (!(fiber.excess_loss_db_per_span >= 0.0))
    issues.push_back("fiber.excess_loss_db_per_span must be >= 0");
  if (!issues.empty()) throw config_error(std::move(issues));
}

double AmplifierSpec::spontaneous_emission_factor() const {
  return db_to_linear(noise_figure_db) / 2.0;
}

void validate(const AmplifierSpec& amp) {
  if (!(amp.noise_figure_db > 0.0))
    throw config_error({"amplifier.noise_figure_db must be > 0"});
}

std::vector<std::string> warnings(const AmplifierSpec& amp) {
  std::vector<std::string> w;
  if (amp.noise_figure_db < amp.quantum_limit_warning_db)
    w.push_back("amplifier.noise_figure_db below quantum-limit threshold of " +
                std::to_string(amp.quantum_limit_warning_db) + " dB");
  return w;
}

void validate(const WdmGrid& grid) {
  std::vector<std::string> issues;
  if (grid.channel_count <= 0) issues.push_back("grid.channel_count must be positive");
  if (!(grid.symbol_rate_hz > 0.0)) issues.push_back("grid.symbol_rate_hz must be > 0");
  if (!(grid.channel_spacing_hz > 0.0)) issues.push_back("grid.channel_spacing_hz must be > 0");
  if (grid.symbol_rate_hz > grid.channel_spacing_hz)
    issues.push_back("grid.symbol_rate_hz must not exceed grid.channel_spacing_hz");
  if (!(grid.center_frequency_hz > 0.0)) issues.push_back("grid.center_frequency_hz must be > 0");
  if (!issues.empty()) throw config_error(std::move(issues));
}

void validate(const LinkConfig& link) {
  validate(link.fiber);
  validate(link.amplifier);
  validate(link.grid);
  std::vector<std::string> issues;
  if (!(link.span_length_km > 0.0)) issues.push_back("link.span_length_km must be > 0");
  if (link.span_count < 1) issues.push_back("link.span_count must be >= 1");
  if (!(link.per_channel_launch_power_w > 0.0))
    issues.push_back("link.per_channel_launch_power_w must be > 0");
  if (link.b2b_snr_linear && !(*link.b2b_snr_linear > 0.0))
    issues.push_back("link.b2b_snr_linear must be > 0 when present");
  if (link.loop_noise_power_w && !(*link.loop_noise_power_w >= 0.0))
    issues.push_back("link.loop_noise_power_w must be >= 0 when present");
  if (!(link.loop_turn_km > 0.0)) issues.push_back("link.loop_turn_km must be > 0");
  if (!issues.empty()) throw config_error(std::move(issues));
}

namespace {

double span_loss_linear(const LinkConfig& link, double span_length_km) {
  // A in (0,1): fiber loss plus any per-span excess loss.
  return std::exp(-link.fiber.alpha_linear_per_km() * span_length_km) *
         db_to_linear(-link.fiber.excess_loss_db_per_span);
}

double ase_coefficient(const LinkConfig& link) {
  // P_ASE = coeff * (G - 1)
  return 2.0 * planck_j_s * link.grid.center_frequency_hz *
         link.amplifier.spontaneous_emission_factor() * link.grid.symbol_rate_hz;
}

double droop_gain_at(const LinkConfig& link, double span_length_km, double power_w) {
  const double a = span_loss_linear(link, span_length_km);
  const double c = ase_coefficient(link);
  const double denom = a * power_w + c;
  if (!(denom > 0.0) || !std::isfinite(denom))
    throw degenerate_link_error("droop gain denominator underflow");
  const double g = (power_w + c) / denom;
  if (!(g > 1.0))
    throw unsustainable_span_error("span loss leaves no net gain (G <= 1)");
  return g;
}

double nonlinear_power_at(const LinkConfig& link, double span_length_km, double power_w) {
  const double beta2 = std::abs(link.fiber.beta2_s2_per_m());
  if (beta2 <= 0.0)
    throw domain_error("dispersion-free fiber unsupported (beta2 = 0)");
  const double bwdm = link.grid.total_bandwidth_hz();
  if (!(bwdm > 0.0)) throw domain_error("total WDM bandwidth must be > 0");

  const double alpha_m = link.fiber.alpha_linear_per_km() / 1e3;
  const double span_m = span_length_km * 1e3;
  const double gamma_m = link.fiber.gamma_per_w_km / 1e3;
  const double l_eff = (1.0 - std::exp(-alpha_m * span_m)) / alpha_m;
  const double l_eff_a = 1.0 / alpha_m;

  const double arg = 0.5 * M_PI * M_PI * beta2 * l_eff_a * bwdm * bwdm;
  const double prefactor = (8.0 / 27.0) * gamma_m * gamma_m * l_eff * l_eff *
                           std::asinh(arg) / (M_PI * beta2 * l_eff_a);
  const double psd = link.grid.channel_count * power_w / bwdm;
  return prefactor * psd * psd * psd * link.grid.symbol_rate_hz;
}

}  // namespace

double droop_gain(const LinkConfig& link) {
  validate(link);
  return droop_gain_at(link, link.span_length_km, link.per_channel_launch_power_w);
}

double ase_power(const LinkConfig& link, double gain_linear) {
  if (!(gain_linear > 1.0))
    throw domain_error("ase_power requires gain > 1");
  return ase_coefficient(link) * (gain_linear - 1.0);
}

double nonlinear_power(const LinkConfig& link) {
  validate(link);
  return nonlinear_power_at(link, link.span_length_km, link.per_channel_launch_power_w);
}

GsnrBreakdown evaluate_gsnr_at(const LinkConfig& base, double span_length_km,
                               double span_count, double launch_power_w) {
  GsnrBreakdown out;
  out.gain_linear = droop_gain_at(base, span_length_km, launch_power_w);
  out.p_ase_w = ase_coefficient(base) * (out.gain_linear - 1.0);
  out.p_nl_w = nonlinear_power_at(base, span_length_km, launch_power_w);

  out.eta = 1.0 - (out.p_ase_w + out.p_nl_w) / launch_power_w;
  if (!(out.eta > 0.0))
    throw unsustainable_span_error("per-span noise exceeds launch power (eta <= 0)");

  const double survival = std::exp(span_count * std::log(out.eta));
  out.gsnr_linear = survival / (1.0 - survival);
  out.gsnr_db = linear_to_db(out.gsnr_linear);

  // Additive terms of the modified formula, chosen so it reduces exactly to
  // the plain GSNR when both extras vanish.
  double extra_over_ps = 0.0;
  if (base.b2b_snr_linear) extra_over_ps += 1.0 / *base.b2b_snr_linear;
  if (base.loop_noise_power_w && *base.loop_noise_power_w > 0.0) {
    const double total_km = span_length_km * span_count;
    const double turns =
        std::max(1.0, std::round(total_km / base.loop_turn_km));
    extra_over_ps += turns * *base.loop_noise_power_w / launch_power_w;
  }
  out.gsnr_modified_linear =
      extra_over_ps == 0.0
          ? out.gsnr_linear
          : 1.0 / ((1.0 - survival) / survival + extra_over_ps);
  return out;
}

GsnrBreakdown evaluate_gsnr(const LinkConfig& link) {
  validate(link);
  return evaluate_gsnr_at(link, link.span_length_km, link.span_count,
                          link.per_channel_launch_power_w);
}

}  // namespace linkplan
