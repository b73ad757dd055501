#include "linkplan/capacity.hpp"

#include <cmath>

#include "linkplan/errors.hpp"

namespace linkplan {

double shannon_capacity(double snr_linear, double bandwidth_hz, int polarizations) {
  if (snr_linear < 0.0) throw domain_error("shannon_capacity requires SNR >= 0");
  if (!(bandwidth_hz > 0.0)) throw domain_error("shannon_capacity requires bandwidth > 0");
  if (polarizations < 1) throw domain_error("shannon_capacity requires >= 1 polarization");
  return polarizations * bandwidth_hz * std::log2(1.0 + snr_linear);
}

double required_snr_m(double snr1_linear, double m) {
  if (!(snr1_linear > 0.0)) throw domain_error("required_snr_m needs SNR_1 > 0");
  if (!(m > 0.0)) throw domain_error("required_snr_m needs m > 0");
  return std::pow(1.0 + snr1_linear, 1.0 / m) - 1.0;
}

double required_snr_m(const DistributionQuery& q) {
  return required_snr_m(q.snr1_linear, q.m);
}

double required_snr_m_approx(double snr1_linear, double m) {
  if (!(snr1_linear >= 0.0)) throw domain_error("required_snr_m_approx needs SNR_1 >= 0");
  if (!(m >= 1.0)) throw domain_error("required_snr_m_approx needs m >= 1");
  return std::log(1.0 + snr1_linear) / m;
}

double required_snr_m_approx(const DistributionQuery& q) {
  return required_snr_m_approx(q.snr1_linear, q.m);
}

double amplifier_ratio(double m, double span_m_km, double span_1_km) {
  if (!(m > 0.0 && span_m_km > 0.0 && span_1_km > 0.0))
    throw domain_error("amplifier_ratio needs positive arguments");
  return m * span_1_km / span_m_km;
}

}  // namespace linkplan
