#include "linkplan/rate_adapter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "linkplan/errors.hpp"
#include "linkplan/kernels.hpp"
#include "linkplan/units.hpp"

namespace linkplan {

int bits_per_symbol(QamFormat format) {
  return format == QamFormat::qam16 ? 4 : 6;
}

std::string format_name(QamFormat format) {
  return format == QamFormat::qam16 ? "16QAM" : "64QAM";
}

namespace {

// Gauss-Hermite nodes/weights, order 24, positive half (physicists' weight).
constexpr std::array<std::array<double, 2>, 12> gh24_half = {{
    {2.24414547472515574e-01, 4.26931163868699337e-01},
    {6.74171107037212280e-01, 2.86179535346442915e-01},
    {1.12676081761124514e+00, 1.27739621784559165e-01},
    {1.58425001096169416e+00, 3.74454705032307364e-02},
    {2.04900357366169894e+00, 7.04835581007267307e-03},
    {2.52388101701142720e+00, 8.23692482688416906e-04},
    {3.01254613756556466e+00, 5.68869163640439216e-05},
    {3.52000681303452456e+00, 2.15824570490234137e-06},
    {4.05366440244814896e+00, 4.01897117494143804e-08},
    {4.62566275642378777e+00, 3.04625426998755548e-10},
    {5.25938292766804416e+00, 6.58462024307816698e-13},
    {6.01592556142573986e+00, 1.66436849648910082e-16},
}};

std::vector<std::complex<double>> grid_points(QamFormat format) {
  const int k = bits_per_symbol(format) / 2;
  const int half = 1 << (k - 1);
  std::vector<double> levels;
  for (int l = -(2 * half - 1); l <= 2 * half - 1; l += 2) levels.push_back(l);
  std::vector<std::complex<double>> pts;
  pts.reserve(levels.size() * levels.size());
  for (double im : levels)
    for (double re : levels) pts.emplace_back(re, im);
  return pts;
}

std::vector<double> mb_probabilities(const std::vector<std::complex<double>>& pts,
                                     double nu) {
  double emin = std::norm(pts.front());
  for (const auto& p : pts) emin = std::min(emin, std::norm(p));
  std::vector<double> w(pts.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w[i] = std::exp(-nu * (std::norm(pts[i]) - emin));
    sum += w[i];
  }
  for (auto& v : w) v /= sum;
  return w;
}

double pmf_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

MbConstellation assemble(QamFormat format, double nu) {
  MbConstellation c;
  c.format = format;
  c.points = grid_points(format);
  c.probabilities = mb_probabilities(c.points, nu);
  c.entropy_bits = pmf_entropy(c.probabilities);
  c.mb_scale = nu;
  double mean_energy = 0.0;
  for (std::size_t i = 0; i < c.points.size(); ++i)
    mean_energy += c.probabilities[i] * std::norm(c.points[i]);
  const double scale = 1.0 / std::sqrt(mean_energy);
  for (auto& p : c.points) p *= scale;
  return c;
}

}  // namespace

MbConstellation uniform_constellation(QamFormat format) {
  return assemble(format, 0.0);
}

MbConstellation mb_pmf_for_entropy(QamFormat format, double target_entropy_bits) {
  const double hmax = bits_per_symbol(format);
  if (target_entropy_bits > hmax + 1e-12)
    throw infeasible_entropy_error("target entropy exceeds log2(constellation size)");
  if (target_entropy_bits < 1.0)
    throw infeasible_entropy_error("target entropy below 1 bit/symbol");
  if (target_entropy_bits >= hmax - 1e-12) return assemble(format, 0.0);

  const auto pts = grid_points(format);
  auto entropy_at = [&](double nu) { return pmf_entropy(mb_probabilities(pts, nu)); };

  double lo = 0.0, hi = 0.25;
  while (entropy_at(hi) > target_entropy_bits) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw infeasible_entropy_error("entropy solve failed to bracket");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (entropy_at(mid) > target_entropy_bits) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-14 * (1.0 + hi)) break;
  }
  return assemble(format, 0.5 * (lo + hi));
}

double awgn_mi(const MbConstellation& c, double snr_linear) {
  if (!(snr_linear > 0.0)) throw domain_error("awgn_mi requires SNR > 0");
  const std::size_t m = c.points.size();
  const double sigma_d = std::sqrt(1.0 / (2.0 * snr_linear));  // per dimension
  const double noise_scale = std::sqrt(2.0) * sigma_d;
  constexpr double inv_pi = 1.0 / M_PI;
  constexpr double inv_ln2 = 1.4426950408889634;

  // Full node list from the symmetric half table.
  std::array<double, 24> node{}, weight{};
  for (int i = 0; i < 12; ++i) {
    node[i] = -gh24_half[11 - i][0];
    weight[i] = gh24_half[11 - i][1];
    node[12 + i] = gh24_half[i][0];
    weight[12 + i] = gh24_half[i][1];
  }

  const double inv_two_var = 1.0 / (2.0 * sigma_d * sigma_d);
  double mi = 0.0;
  std::vector<double> expo(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (c.probabilities[i] <= 0.0) continue;
    double acc = 0.0;
    for (int u = 0; u < 24; ++u) {
      for (int v = 0; v < 24; ++v) {
        const std::complex<double> y =
            c.points[i] + noise_scale * std::complex<double>(node[u], node[v]);
        double emax = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
          expo[j] = -std::norm(y - c.points[j]) * inv_two_var;
          if (c.probabilities[j] > 0.0 && expo[j] > emax) emax = expo[j];
        }
        double mix = 0.0;
        for (std::size_t j = 0; j < m; ++j)
          if (c.probabilities[j] > 0.0)
            mix += c.probabilities[j] * std::exp(expo[j] - emax);
        const double log_mix = emax + std::log(mix);
        acc += weight[u] * weight[v] * (expo[i] - log_mix);
      }
    }
    mi += c.probabilities[i] * acc * inv_pi * inv_ln2;
  }
  return mi;
}

double awgn_mi_monte_carlo(const MbConstellation& c, double snr_linear,
                           std::size_t samples, std::uint64_t seed) {
  if (!(snr_linear > 0.0)) throw domain_error("awgn_mi requires SNR > 0");
  const std::size_t m = c.points.size();
  const double sigma_d = std::sqrt(1.0 / (2.0 * snr_linear));
  const double inv_two_var = 1.0 / (2.0 * sigma_d * sigma_d);
  constexpr double inv_ln2 = 1.4426950408889634;

  std::vector<double> cdf(m);
  double run = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    run += c.probabilities[i];
    cdf[i] = run;
  }

  // splitmix-seeded xorshift-free generator: std::mt19937_64 with explicit
  // uniform mapping and Box-Muller keeps results identical across platforms.
  std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ull;
  auto next_u64 = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  auto uniform = [&next_u64]() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  };

  std::vector<double> expo(m);
  double acc = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double pick = uniform();
    const std::size_t idx =
        std::lower_bound(cdf.begin(), cdf.end(), pick) - cdf.begin();
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const std::complex<double> y =
        c.points[idx] + sigma_d * std::complex<double>(r * std::cos(2.0 * M_PI * u2),
                                                       r * std::sin(2.0 * M_PI * u2));
    double emax = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      expo[j] = -std::norm(y - c.points[j]) * inv_two_var;
      if (c.probabilities[j] > 0.0 && expo[j] > emax) emax = expo[j];
    }
    double mix = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (c.probabilities[j] > 0.0) mix += c.probabilities[j] * std::exp(expo[j] - emax);
    acc += (expo[idx] - (emax + std::log(mix))) * inv_ln2;
  }
  return acc / static_cast<double>(samples);
}

const std::vector<FecOverhead>& fec_overheads() {
  static const std::vector<FecOverhead> table = {
      {20, 5, 6}, {25, 4, 5}, {33, 3, 4}};
  return table;
}

namespace {

std::vector<double> entropy_steps(QamFormat format) {
  std::vector<double> h;
  for (double v = 2.0; v <= bits_per_symbol(format) + 1e-9; v += 0.5) h.push_back(v);
  return h;
}

}  // namespace

std::vector<RatePlan> enumerate_rate_plans(double snr_linear, double symbol_rate_hz,
                                           const RateAdapterOptions& options) {
  if (!(snr_linear > 0.0)) throw domain_error("best_rate_plan requires SNR > 0");
  if (!(symbol_rate_hz > 0.0)) throw domain_error("symbol rate must be > 0");
  const double snr_eff = snr_linear / db_to_linear(options.margin_db);

  struct Shape {
    QamFormat format;
    double entropy;
    MbConstellation constellation;
  };
  std::vector<Shape> shapes;
  for (QamFormat f : {QamFormat::qam16, QamFormat::qam64})
    for (double h : entropy_steps(f)) shapes.push_back({f, h, mb_pmf_for_entropy(f, h)});

  std::vector<kernels::MiJob> jobs(shapes.size());
  for (std::size_t i = 0; i < shapes.size(); ++i)
    jobs[i] = {&shapes[i].constellation, snr_eff};
  std::vector<double> mi(shapes.size());
  if (options.parallel)
    kernels::mi_batch(jobs, mi);
  else
    kernels::mi_batch_serial(jobs, mi);

  std::vector<RatePlan> plans;
  plans.reserve(shapes.size() * fec_overheads().size());
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const int mbits = bits_per_symbol(shapes[i].format);
    for (const FecOverhead& oh : fec_overheads()) {
      RatePlan p;
      p.format = shapes[i].format;
      p.entropy_bits = shapes[i].entropy;
      p.overhead = oh;
      // Keep the redundancy term exactly rational so equal-AIR plans tie
      // exactly: m*(1-R) = m*(den-num)/den.
      p.air_bits_per_symbol =
          p.entropy_bits -
          static_cast<double>(mbits * (oh.rate_denominator - oh.rate_numerator)) /
              static_cast<double>(oh.rate_denominator);
      p.mi_bits_per_symbol = mi[i];
      p.achievable = p.air_bits_per_symbol <= mi[i] && p.air_bits_per_symbol > 0.0;
      p.net_throughput_bps =
          p.achievable ? symbol_rate_hz * p.air_bits_per_symbol * 2.0 : 0.0;
      plans.push_back(p);
    }
  }
  return plans;
}

RatePlan best_rate_plan(double snr_linear, double symbol_rate_hz,
                        const RateAdapterOptions& options) {
  const std::vector<RatePlan> plans =
      enumerate_rate_plans(snr_linear, symbol_rate_hz, options);
  auto better = [](const RatePlan& a, const RatePlan& b) {
    if (a.net_throughput_bps != b.net_throughput_bps)
      return a.net_throughput_bps > b.net_throughput_bps;
    if (a.entropy_bits != b.entropy_bits) return a.entropy_bits < b.entropy_bits;
    const int ba = bits_per_symbol(a.format), bb = bits_per_symbol(b.format);
    if (ba != bb) return ba < bb;
    return a.overhead.rate() > b.overhead.rate();
  };
  RatePlan best;  // achievable=false, throughput 0
  bool have = false;
  for (const RatePlan& p : plans) {
    if (!p.achievable) continue;
    if (!have || better(p, best)) {
      best = p;
      have = true;
    }
  }
  return best;
}

}  // namespace linkplan
