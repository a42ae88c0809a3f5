#pragma once

#include <numbers>

// Conversions between the catalogue units used in design tables and SI.
namespace hydro::units {

inline constexpr double kPi = std::numbers::pi;

constexpr double lpm_to_m3s(double q) { return q / 60000.0; }
constexpr double m3s_to_lpm(double q) { return q * 60000.0; }

constexpr double rpm_to_rads(double n) { return n * kPi / 30.0; }
constexpr double rads_to_rpm(double w) { return w * 30.0 / kPi; }

constexpr double bar_to_pa(double p) { return p * 1e5; }
constexpr double pa_to_bar(double p) { return p / 1e5; }

/// cc/rev -> m^3/rad
constexpr double cc_per_rev_to_si(double d) { return d * 1e-6 / (2.0 * kPi); }
/// m^3/rad -> cc/rev
constexpr double si_to_cc_per_rev(double d) { return d * 2.0 * kPi * 1e6; }

/// (L/min)/bar -> m^3/(s.Pa)
constexpr double lpm_per_bar_to_si(double g) { return g / 60000.0 / 1e5; }
constexpr double si_to_lpm_per_bar(double g) { return g * 60000.0 * 1e5; }

/// N.m/bar -> N.m/Pa
constexpr double per_bar_to_per_pa(double k) { return k / 1e5; }

}  // namespace hydro::units
