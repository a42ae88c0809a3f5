#include <algorithm>
#include <cmath>

#include "hydro/circuits/networks.hpp"
#include "hydro/hydraulics/units.hpp"

namespace hydro::circuits {

namespace {

enum : std::size_t { kSupply = 0, kReturn = 1, kFeeder = 2, kSpeed = 3 };

}  // namespace

void FaultConfig::validate() const {
    if (!(target_volumetric_eff > 0.0 && target_volumetric_eff < 1.0)) {
        throw DomainError("target volumetric efficiency must lie in (0, 1)");
    }
}

CircuitB::CircuitB(const DesignPointB& dp, double motor_slip, const CalibrationRecord& cal)
    : design_(dp),
      layout_({"supply_pressure", "return_pressure", "feeder_pressure", "load_speed"}),
      boost_drive_{dp.pm1_speed},
      main_drive_{dp.pm2_speed},
      boost_pump_{dp.pump1_disp, cal.pump_slip_per_cc * dp.pump1_disp, 0.0, 0.0},
      main_pump_{dp.pump2_disp, cal.pump_slip_per_cc * dp.pump2_disp, 0.0, 0.0},
      motor_{cal.motor_b_displacement_cc, motor_slip, cal.motor_b_drain_ratio * motor_slip, cal.motor_visc_friction,
             0.0},
      relief_(cal.relief),
      check_(cal.check),
      supply_{cal.supply_diameter_b_mm, cal.pipe_length_m, cal.bulk_modulus_pa, cal.vapor_floor_pa, cal.port_volume_l * 1e-3},
      return_{cal.return_diameter_b_mm, cal.pipe_length_m, cal.bulk_modulus_pa, cal.vapor_floor_pa, cal.port_volume_l * 1e-3},
      feeder_{cal.feeder_diameter_b_mm, cal.pipe_length_m, cal.bulk_modulus_pa, cal.vapor_floor_pa, cal.port_volume_l * 1e-3},
      load_(cal.load_b),
      tank_pa_(cal.tank_pressure_pa) {
    boost_drive_.validate();
    main_drive_.validate();
    boost_pump_.validate();
    main_pump_.validate();
    motor_.validate();
    relief_.validate();
    check_.validate();
    supply_.validate();
    return_.validate();
    feeder_.validate();
    load_.validate();
}

CircuitB::Flows CircuitB::flows(std::span<const double> x) const {
    const double p_s = x[kSupply];
    const double p_r = x[kReturn];
    const double p_f = x[kFeeder];
    const double w = x[kSpeed];

    Flows f;
    f.main_pump = hyd::pump_flow(main_pump_, main_drive_.shaft_speed(), p_s - p_r);
    f.boost_pump = hyd::pump_flow(boost_pump_, boost_drive_.shaft_speed(), p_f - tank_pa_);
    const auto m = hyd::motor_ports(motor_, w, p_s, p_r, tank_pa_);
    f.motor_intake = m.intake_flow;
    f.motor_discharge = m.discharge_flow;
    f.motor_torque = m.torque;
    f.motor_ideal = units::cc_per_rev_to_si(motor_.displacement_cc) * w;
    f.main_relief = hyd::relief_valve_flow(relief_, p_s - p_r);
    f.feeder_relief = hyd::relief_valve_flow(relief_, p_f - tank_pa_);
    f.check = hyd::check_valve_flow(check_, p_f - p_r);
    return f;
}

void CircuitB::derivative(std::span<const double> x, std::span<double> dx) const {
    const Flows f = flows(x);
    dx[kSupply] = hyd::pipe_pressure_rate(supply_, f.main_pump - f.motor_intake - f.main_relief, x[kSupply]);
    dx[kReturn] = hyd::pipe_pressure_rate(
        return_, f.motor_discharge + f.main_relief + f.check - f.main_pump, x[kReturn]);
    dx[kFeeder] = hyd::pipe_pressure_rate(feeder_, f.boost_pump - f.feeder_relief - f.check, x[kFeeder]);
    dx[kSpeed] = hyd::load_acceleration(load_, f.motor_torque, x[kSpeed]);
}

void CircuitB::project(std::span<double> x) const {
    x[kSupply] = std::max(x[kSupply], supply_.vapor_floor);
    x[kReturn] = std::max(x[kReturn], return_.vapor_floor);
    x[kFeeder] = std::max(x[kFeeder], feeder_.vapor_floor);
}

double CircuitB::stiffness_bound() const {
    const double beta = supply_.bulk_modulus;
    const double g_main = units::lpm_per_bar_to_si(main_pump_.slip_coeff + motor_.slip_coeff + relief_.gradient);
    const double g_drain = units::lpm_per_bar_to_si(motor_.drain_coeff);
    const double g_check = units::lpm_per_bar_to_si(check_.gradient);
    const double g_feeder = units::lpm_per_bar_to_si(boost_pump_.slip_coeff + relief_.gradient);
    const double supply_row = beta / supply_.node_volume() * (2.0 * g_main + g_drain);
    const double return_row = beta / return_.node_volume() * (2.0 * g_main + g_drain + 2.0 * g_check);
    const double feeder_row = beta / feeder_.node_volume() * (g_feeder + 2.0 * g_check);
    const double d = units::cc_per_rev_to_si(motor_.displacement_cc);
    const double omega_n = d * std::sqrt(beta / load_.inertia * (1.0 / supply_.node_volume() + 1.0 / return_.node_volume()));
    return std::max({supply_row, return_row, feeder_row, omega_n});
}

sim::Observables CircuitB::observe(std::span<const double> x) const {
    const Flows f = flows(x);
    sim::Observables o;
    o.motor_speed_rpm = units::rads_to_rpm(x[kSpeed]);
    o.supply_pressure_bar = units::pa_to_bar(x[kSupply] - tank_pa_);
    o.pump_flow_lpm = {units::m3s_to_lpm(f.main_pump), units::m3s_to_lpm(f.boost_pump)};
    o.relief_flow_lpm = {units::m3s_to_lpm(f.main_relief), units::m3s_to_lpm(f.feeder_relief)};
    o.motor_volumetric_eff = hyd::volumetric_efficiency(f.motor_ideal, f.motor_intake);
    return o;
}

sim::StateVector CircuitB::initial_state() const { return {0.0, {tank_pa_, tank_pa_, tank_pa_, 0.0}}; }

CircuitB build_circuit_b(const DesignPointB& dp, const FaultConfig& fault, const CalibrationRecord& cal) {
    validate(dp);
    const auto& slip = fault.faulty ? cal.motor_b_slip_faulty : cal.motor_b_slip_nominal;
    if (!slip) {
        throw CalibrationError(
            "calibration record has no solved motor slip; run: hydro-opt calibrate --target-eff 0.75 --out "
            "calibration.json");
    }
    return CircuitB(dp, *slip, cal);
}

}  // namespace hydro::circuits
