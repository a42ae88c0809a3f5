#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hydro/circuits/design.hpp"
#include "hydro/hydraulics/components.hpp"

namespace hydro::circuits {

class CalibrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Every physical constant that is not a design variable, for both circuits.
/// Units follow the field suffixes; leakage coefficients are (L/min)/bar.
struct CalibrationRecord {
    // Fluid and lines
    double bulk_modulus_pa = 1.4e9;
    double pipe_length_m = 1.0;
    double vapor_floor_pa = 1e3;
    double tank_pressure_pa = 1e5;
    double port_volume_l = 0.5;  // per line node

    // Valves shared by both circuits
    hyd::ReliefValveParams relief{100.0, 10.0};
    hyd::CheckValveParams check{0.5, 50.0};    // boost line into the loop (B)
    hyd::CheckValveParams makeup{0.0, 10.0};   // tank into the return line (A)

    // Pump/motor leakage scales with displacement: Cs = coeff * D.
    double pump_slip_per_cc = 6.5e-5;
    double motor_visc_friction = 0.05;  // N.m/(rad/s)

    // Simple transmission
    double prime_mover_rpm_a = 1500.0;
    double motor_a_slip_per_cc = 1.6e-4;
    hyd::LoadParams load_a{50.0, 8.0, 5.0, 1.5, 0.005, 0.0};

    // Boosted closed loop
    double motor_b_displacement_cc = 473.0;
    double motor_b_drain_ratio = 0.7;  // drain_coeff / slip_coeff
    double supply_diameter_b_mm = 25.0;
    double return_diameter_b_mm = 25.0;
    double feeder_diameter_b_mm = 12.0;
    hyd::LoadParams load_b{50.0, 20.0, 20.0, 12.0, 0.0, 0.0};

    double target_volumetric_eff = 0.75;
    double nominal_volumetric_eff = 0.945;
    DesignPointB reference_point{43.0, 678.0, 696.0, 276.0};
    std::optional<double> motor_b_slip_faulty;   // (L/min)/bar, solved by calibrate
    std::optional<double> motor_b_slip_nominal;  // (L/min)/bar, solved by calibrate

    bool operator==(const CalibrationRecord&) const = default;

    bool has_fault_slips() const { return motor_b_slip_faulty.has_value() && motor_b_slip_nominal.has_value(); }
};

std::string to_json(const CalibrationRecord& cal);
CalibrationRecord calibration_from_json(const std::string& text);

void save_calibration(const CalibrationRecord& cal, const std::string& path);
/// Throws CalibrationError when the file is missing or malformed.
CalibrationRecord load_calibration(const std::string& path);

}  // namespace hydro::circuits
