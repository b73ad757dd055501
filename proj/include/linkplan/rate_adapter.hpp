#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace linkplan {

enum class QamFormat { qam16, qam64 };

int bits_per_symbol(QamFormat format);
std::string format_name(QamFormat format);

/// Square QAM constellation carrying a Maxwell-Boltzmann PMF, normalized to
/// unit mean energy under that PMF.
struct MbConstellation {
  QamFormat format = QamFormat::qam16;
  std::vector<std::complex<double>> points;
  std::vector<double> probabilities;
  double entropy_bits = 0.0;
  double mb_scale = 0.0;  // nu; 0 reproduces the uniform PMF
};

MbConstellation uniform_constellation(QamFormat format);

/// Solves the MB scale so the PMF entropy hits the target within 1e-6 bits.
MbConstellation mb_pmf_for_entropy(QamFormat format, double target_entropy_bits);

/// Mutual information of the discrete-input complex AWGN channel in
/// bits/symbol (per polarization), Gauss-Hermite quadrature of order 24 per
/// dimension.
double awgn_mi(const MbConstellation& constellation, double snr_linear);

/// Monte-Carlo estimate of the same quantity (reference method).
double awgn_mi_monte_carlo(const MbConstellation& constellation, double snr_linear,
                           std::size_t samples = 1'000'000, std::uint64_t seed = 0x5eed);

/// LDPC overhead choices: 20% -> R=5/6, 25% -> R=4/5, 33% -> R=3/4.
struct FecOverhead {
  int percent = 0;
  int rate_numerator = 0;
  int rate_denominator = 0;

  double rate() const {
    return static_cast<double>(rate_numerator) / rate_denominator;
  }
};

const std::vector<FecOverhead>& fec_overheads();

struct RatePlan {
  QamFormat format = QamFormat::qam16;
  double entropy_bits = 0.0;
  FecOverhead overhead;
  double air_bits_per_symbol = 0.0;  // H(X) - m_bits (1 - R), per polarization
  double mi_bits_per_symbol = 0.0;   // at the margin-reduced SNR
  double net_throughput_bps = 0.0;   // R_s (H - m (1-R)) * 2 when achievable
  bool achievable = false;
};

struct RateAdapterOptions {
  // SNR margin modelling the real-code gap of the DVB-S2-family LDPC
  // decoders; 0 gives the ideal-decoding analysis.
  double margin_db = 1.0;
  bool parallel = true;
};

/// Every (format, entropy, overhead) triple with its achievability verdict,
/// ordered by format, entropy, overhead.
std::vector<RatePlan> enumerate_rate_plans(double snr_linear, double symbol_rate_hz,
                                           const RateAdapterOptions& options = {});

/// Achievable triple with maximum net throughput; ties break toward lower
/// entropy, then the smaller constellation, then the higher code rate. When
/// nothing is achievable the plan has achievable=false and zero throughput.
RatePlan best_rate_plan(double snr_linear, double symbol_rate_hz,
                        const RateAdapterOptions& options = {});

}  // namespace linkplan
