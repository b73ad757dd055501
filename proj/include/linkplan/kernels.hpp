#pragma once

#include <span>

#include "linkplan/link_optimizer.hpp"
#include "linkplan/photonic.hpp"
#include "linkplan/rate_adapter.hpp"

// Data-parallel inner loops, each with a serial reference twin. The OpenMP
// variants write results by index only, so outputs are bitwise identical to
// the serial ones for any thread count.
namespace linkplan::kernels {

/// GSNR in dB for each candidate launch power at fixed span geometry;
/// unsustainable powers come back as NaN.
void power_sweep(const LinkConfig& geometry, double span_length_km, double span_count,
                 std::span<const double> powers_w, std::span<double> gsnr_db_out);
void power_sweep_serial(const LinkConfig& geometry, double span_length_km,
                        double span_count, std::span<const double> powers_w,
                        std::span<double> gsnr_db_out);

/// Peak-GSNR point per span length (N_sp = round(total/span)).
void span_curve(const LinkConfig& geometry, double total_length_km, double backoff_db,
                std::span<const double> span_lengths_km, std::span<SpanGsnrPoint> out);
void span_curve_serial(const LinkConfig& geometry, double total_length_km,
                       double backoff_db, std::span<const double> span_lengths_km,
                       std::span<SpanGsnrPoint> out);

struct MiJob {
  const MbConstellation* constellation = nullptr;
  double snr_linear = 0.0;
};

/// AWGN mutual information for a batch of (constellation, SNR) jobs.
void mi_batch(std::span<const MiJob> jobs, std::span<double> mi_out);
void mi_batch_serial(std::span<const MiJob> jobs, std::span<double> mi_out);

}  // namespace linkplan::kernels
