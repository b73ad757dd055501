#pragma once

namespace linkplan {

/// Shannon-Hartley capacity in bit/s: polarizations * B * log2(1 + SNR).
double shannon_capacity(double snr_linear, double bandwidth_hz = 1.0,
                        int polarizations = 1);

/// A fixed capacity redistributed over m spatial channels. m is a positive
/// rational (fiber-pair count ratios); fractional values are exact inputs,
/// not approximations.
struct DistributionQuery {
  double snr1_linear = 0.0;  // baseline single-channel SNR
  double m = 1.0;            // spatial-channel multiplier
  double bandwidth_hz = 1.0;
};

/// Per-channel SNR that preserves total capacity: (1 + SNR_1)^(1/m) - 1.
double required_snr_m(const DistributionQuery& q);
double required_snr_m(double snr1_linear, double m);

/// Large-m approximation ln(1 + SNR_1)/m; exact value >= this for m >= 1.
double required_snr_m_approx(const DistributionQuery& q);
double required_snr_m_approx(double snr1_linear, double m);

/// Amplifier-count ratio m * L_1 / L_m; spatial distribution saves
/// amplifiers iff the result is < 1 (i.e. L_m > m * L_1).
double amplifier_ratio(double m, double span_m_km, double span_1_km);

}  // namespace linkplan
