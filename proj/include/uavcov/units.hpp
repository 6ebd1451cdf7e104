#ifndef UAVCOV_UNITS_HPP
#define UAVCOV_UNITS_HPP

#include <cmath>
#include <numbers>

namespace uavcov {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) noexcept { return 10.0 * std::log10(lin); }
inline double dbm_to_watt(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) noexcept { return 10.0 * std::log10(w) + 30.0; }

inline double cot(double x) noexcept { return std::cos(x) / std::sin(x); }

/// Inverse cotangent on the (0, pi) branch, so angles behind the reference BS stay representable.
inline double acot(double x) noexcept { return std::atan2(1.0, x); }

}  // namespace uavcov

#endif  // UAVCOV_UNITS_HPP
