#include "linkplan/link_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linkplan/errors.hpp"
#include "linkplan/kernels.hpp"

namespace linkplan {

namespace {

double metric_db(const LinkConfig& geometry, double span_km, double spans, double power_w) {
  // Optimization metric: the modified GSNR, which equals the plain GSNR
  // whenever no b2b/loop terms are configured.
  try {
    return linear_to_db(
        evaluate_gsnr_at(geometry, span_km, spans, power_w).gsnr_modified_linear);
  } catch (const error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<double> power_grid(const PowerGridOptions& o) {
  std::vector<double> powers;
  const int n = static_cast<int>(std::round((o.max_dbm - o.min_dbm) / o.step_db)) + 1;
  powers.reserve(n);
  for (int i = 0; i < n; ++i) powers.push_back(dbm_to_watts(o.min_dbm + i * o.step_db));
  return powers;
}

struct SweepEval {
  double peak_power_w;
  double peak_gsnr_db;
  double power_w;    // at backoff
  double gsnr_db;    // at backoff
};

SweepEval sweep_at(const LinkConfig& geometry, double span_km, double spans,
                   double backoff_db, const PowerGridOptions& opts,
                   std::vector<PowerSample>* samples_out = nullptr) {
  const std::vector<double> powers = power_grid(opts);
  std::vector<double> gsnr(powers.size());
  if (opts.parallel)
    kernels::power_sweep(geometry, span_km, spans, powers, gsnr);
  else
    kernels::power_sweep_serial(geometry, span_km, spans, powers, gsnr);

  int best = -1;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (std::isnan(gsnr[i])) continue;
    if (samples_out) samples_out->push_back({powers[i], gsnr[i]});
    if (best < 0 || gsnr[i] > gsnr[best]) best = static_cast<int>(i);
  }
  if (best < 0)
    throw infeasible_geometry_error("no launch power in the sweep range sustains the link");

  auto eval_dbm = [&](double dbm) {
    return metric_db(geometry, span_km, spans, dbm_to_watts(dbm));
  };

  // Golden-section refinement between the grid neighbours of the maximum.
  double lo = opts.min_dbm + std::max(best - 1, 0) * opts.step_db;
  double hi = opts.min_dbm +
              std::min<std::size_t>(best + 1, powers.size() - 1) * opts.step_db;
  constexpr double inv_phi = 0.6180339887498949;
  double c1 = hi - inv_phi * (hi - lo);
  double c2 = lo + inv_phi * (hi - lo);
  double f1 = eval_dbm(c1);
  double f2 = eval_dbm(c2);
  while (hi - lo > opts.refine_tolerance_db) {
    if (f1 < f2 || std::isnan(f1)) {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + inv_phi * (hi - lo);
      f2 = eval_dbm(c2);
    } else {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - inv_phi * (hi - lo);
      f1 = eval_dbm(c1);
    }
  }
  SweepEval r{};
  r.peak_power_w = dbm_to_watts(0.5 * (lo + hi));
  r.peak_gsnr_db = metric_db(geometry, span_km, spans, r.peak_power_w);
  if (std::isnan(r.peak_gsnr_db))
    throw infeasible_geometry_error("refined peak is unsustainable");

  if (backoff_db <= 0.0) {
    r.power_w = r.peak_power_w;
    r.gsnr_db = r.peak_gsnr_db;
    return r;
  }

  // Back off on the lower-power side: find the power where the GSNR drops
  // backoff_db below the peak.
  const double target_db = r.peak_gsnr_db - backoff_db;
  double p_lo = powers.front();
  double p_hi = r.peak_power_w;
  double g_lo = metric_db(geometry, span_km, spans, p_lo);
  while ((std::isnan(g_lo) || g_lo >= target_db) && p_lo > 1e-15) {
    if (!std::isnan(g_lo) && g_lo >= target_db) p_lo *= 0.5;
    else break;  // NaN at low power cannot happen for this model
    g_lo = metric_db(geometry, span_km, spans, p_lo);
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = std::sqrt(p_lo * p_hi);
    const double g = metric_db(geometry, span_km, spans, mid);
    if (std::isnan(g) || g < target_db) p_lo = mid;
    else p_hi = mid;
    if (p_hi / p_lo < 1.0 + 1e-12) break;
  }
  r.power_w = p_hi;
  r.gsnr_db = metric_db(geometry, span_km, spans, p_hi);
  return r;
}

}  // namespace

PowerSweepResult optimize_launch_power(const LinkConfig& geometry, double backoff_db,
                                       const PowerGridOptions& options) {
  if (backoff_db < 0.0) throw domain_error("backoff_db must be >= 0");
  PowerSweepResult out;
  const SweepEval ev = sweep_at(geometry, geometry.span_length_km, geometry.span_count,
                                backoff_db, options, &out.samples);
  out.peak_power_w = ev.peak_power_w;
  out.peak_gsnr_db = ev.peak_gsnr_db;
  out.optimal_power_w = ev.power_w;
  out.optimal_gsnr = evaluate_gsnr_at(geometry, geometry.span_length_km,
                                      geometry.span_count, ev.power_w);
  return out;
}

std::vector<SpanGsnrPoint> max_gsnr_curve(const LinkConfig& geometry,
                                          const std::vector<double>& span_lengths_km,
                                          double total_length_km, double backoff_db,
                                          const PowerGridOptions& options) {
  std::vector<SpanGsnrPoint> out(span_lengths_km.size());
  if (options.parallel)
    kernels::span_curve(geometry, total_length_km, backoff_db, span_lengths_km, out);
  else
    kernels::span_curve_serial(geometry, total_length_km, backoff_db, span_lengths_km, out);
  return out;
}

SpanSolveResult solve_span_for_target(const LinkConfig& geometry, double total_length_km,
                                      double target_gsnr_linear, double backoff_db,
                                      SpanSnapPolicy policy, const SpanSolveOptions& options) {
  if (!(target_gsnr_linear > 0.0)) throw domain_error("target GSNR must be > 0");
  if (!(total_length_km > options.min_span_km))
    throw domain_error("total length must exceed the minimum span length");
  const double target_db = linear_to_db(target_gsnr_linear);

  // Achievable GSNR on the continuous relaxation N = total/span; strictly
  // decreasing in span length.
  auto achievable_db = [&](double span_km) {
    return sweep_at(geometry, span_km, total_length_km / span_km, backoff_db,
                    options.power)
        .gsnr_db;
  };

  if (achievable_db(options.min_span_km) < target_db)
    throw target_too_high_error("target GSNR unreachable at the minimum span length");

  double raw;
  const double hi_cap = std::min(options.max_span_km, total_length_km);
  if (achievable_db(hi_cap) >= target_db) {
    raw = hi_cap;
  } else {
    double lo = options.min_span_km, hi = hi_cap;
    while (hi - lo > options.span_tolerance_km) {
      const double mid = 0.5 * (lo + hi);
      if (achievable_db(mid) >= target_db) lo = mid;
      else hi = mid;
    }
    raw = lo;
  }

  SpanSolveResult res;
  res.backoff_db = backoff_db;
  if (policy == SpanSnapPolicy::none) {
    const double spans = total_length_km / raw;
    const SweepEval ev = sweep_at(geometry, raw, spans, backoff_db, options.power);
    res.span_length_km = raw;
    res.span_count = spans;
    res.achieved_gsnr_db = ev.gsnr_db;
    res.launch_power_w = ev.power_w;
    return res;
  }

  // Snap to an integer span count. floor() lands on the longer-span side of
  // the raw crossing; accept it only if it still meets the target within the
  // snap tolerance, otherwise take one more span.
  int n = std::max(1, static_cast<int>(std::floor(total_length_km / raw)));
  while (total_length_km / n > hi_cap) ++n;
  SweepEval ev = sweep_at(geometry, total_length_km / n, n, backoff_db, options.power);
  if (ev.gsnr_db < target_db - options.snap_tolerance_db) {
    ++n;
    ev = sweep_at(geometry, total_length_km / n, n, backoff_db, options.power);
  }
  res.span_length_km = total_length_km / n;
  res.span_count = n;
  res.achieved_gsnr_db = ev.gsnr_db;
  res.launch_power_w = ev.power_w;
  return res;
}

namespace detail {

// Shared with the span-curve kernel. Per-point infeasibility is reported as
// NaN so one bad span never aborts a whole curve (and exceptions never cross
// the parallel region).
SpanGsnrPoint curve_point(const LinkConfig& geometry, double total_length_km,
                          double backoff_db, double span_km) {
  SpanGsnrPoint p;
  p.span_km = span_km;
  p.span_count = std::max(1, static_cast<int>(std::round(total_length_km / span_km)));
  PowerGridOptions serial_opts;
  serial_opts.parallel = false;
  try {
    const SweepEval ev =
        sweep_at(geometry, span_km, p.span_count, backoff_db, serial_opts);
    p.gsnr_db = ev.gsnr_db;
    p.power_w = ev.power_w;
  } catch (const error&) {
    p.gsnr_db = std::numeric_limits<double>::quiet_NaN();
    p.power_w = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

}  // namespace detail

}  // namespace linkplan
