#pragma once

#include <cmath>

namespace linkplan {

// Physical constants, SI.
inline constexpr double planck_j_s = 6.62607015e-34;
inline constexpr double light_speed_m_s = 299792458.0;

// Single authority for unit conversions. dB/dBm exist only at the API
// boundary; everything internal is linear SI.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
inline double dbm_to_watts(double dbm) { return db_to_linear(dbm) * 1e-3; }
inline double watts_to_dbm(double watts) { return linear_to_db(watts * 1e3); }

}  // namespace linkplan
