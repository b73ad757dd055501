#include "linkplan/kernels.hpp"

#include <cmath>
#include <limits>

#include "linkplan/errors.hpp"

namespace linkplan::kernels {

namespace {

double gsnr_db_or_nan(const LinkConfig& geometry, double span_km, double spans,
                      double power_w) {
  try {
    return linear_to_db(
        evaluate_gsnr_at(geometry, span_km, spans, power_w).gsnr_modified_linear);
  } catch (const error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

void power_sweep(const LinkConfig& geometry, double span_length_km, double span_count,
                 std::span<const double> powers_w, std::span<double> gsnr_db_out) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ssize(powers_w); ++i)
    gsnr_db_out[i] = gsnr_db_or_nan(geometry, span_length_km, span_count, powers_w[i]);
}

void power_sweep_serial(const LinkConfig& geometry, double span_length_km,
                        double span_count, std::span<const double> powers_w,
                        std::span<double> gsnr_db_out) {
  for (std::ptrdiff_t i = 0; i < std::ssize(powers_w); ++i)
    gsnr_db_out[i] = gsnr_db_or_nan(geometry, span_length_km, span_count, powers_w[i]);
}

void span_curve(const LinkConfig& geometry, double total_length_km, double backoff_db,
                std::span<const double> span_lengths_km, std::span<SpanGsnrPoint> out) {
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < std::ssize(span_lengths_km); ++i)
    out[i] = detail::curve_point(geometry, total_length_km, backoff_db, span_lengths_km[i]);
}

void span_curve_serial(const LinkConfig& geometry, double total_length_km,
                       double backoff_db, std::span<const double> span_lengths_km,
                       std::span<SpanGsnrPoint> out) {
  for (std::ptrdiff_t i = 0; i < std::ssize(span_lengths_km); ++i)
    out[i] = detail::curve_point(geometry, total_length_km, backoff_db, span_lengths_km[i]);
}

void mi_batch(std::span<const MiJob> jobs, std::span<double> mi_out) {
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < std::ssize(jobs); ++i)
    mi_out[i] = awgn_mi(*jobs[i].constellation, jobs[i].snr_linear);
}

void mi_batch_serial(std::span<const MiJob> jobs, std::span<double> mi_out) {
  for (std::ptrdiff_t i = 0; i < std::ssize(jobs); ++i)
    mi_out[i] = awgn_mi(*jobs[i].constellation, jobs[i].snr_linear);
}

}  // namespace linkplan::kernels
