#pragma once

#include <cmath>
#include <numbers>

namespace ssac {

/// 10^(x/10): dB ratio to linear ratio.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// dBm to watts (30 dBm = 1 W).
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace ssac
