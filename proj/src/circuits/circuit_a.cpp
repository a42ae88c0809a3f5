#include <algorithm>
#include <cmath>

#include "hydro/circuits/networks.hpp"
#include "hydro/hydraulics/units.hpp"

namespace hydro::circuits {

namespace {

enum : std::size_t { kSupply = 0, kReturn = 1, kSpeed = 2 };

}  // namespace

CircuitA::CircuitA(const DesignPointA& dp, const CalibrationRecord& cal)
    : design_(dp),
      layout_({"supply_pressure", "return_pressure", "load_speed"}),
      prime_mover_{cal.prime_mover_rpm_a},
      pump_{dp.pump_disp, cal.pump_slip_per_cc * dp.pump_disp, 0.0, 0.0},
      motor_{dp.motor_disp, cal.motor_a_slip_per_cc * dp.motor_disp, 0.0, cal.motor_visc_friction, 0.0},
      relief_(cal.relief),
      makeup_(cal.makeup),
      supply_{dp.pipe_diameter, cal.pipe_length_m, cal.bulk_modulus_pa, cal.vapor_floor_pa, cal.port_volume_l * 1e-3},
      return_{dp.pipe_diameter, cal.pipe_length_m, cal.bulk_modulus_pa, cal.vapor_floor_pa, cal.port_volume_l * 1e-3},
      load_(cal.load_a),
      tank_pa_(cal.tank_pressure_pa) {
    prime_mover_.validate();
    pump_.validate();
    motor_.validate();
    relief_.validate();
    makeup_.validate();
    supply_.validate();
    load_.validate();
}

CircuitA::Flows CircuitA::flows(std::span<const double> x) const {
    const double p_s = x[kSupply];
    const double p_r = x[kReturn];
    const double w = x[kSpeed];

    Flows f;
    f.pump = hyd::pump_flow(pump_, prime_mover_.shaft_speed(), p_s - p_r);
    const auto m = hyd::motor_behavior(motor_, w, p_s - p_r);
    f.motor_intake = m.intake_flow;
    f.motor_ideal = units::cc_per_rev_to_si(motor_.displacement_cc) * w;
    f.motor_torque = m.torque;
    f.relief = hyd::relief_valve_flow(relief_, p_s - tank_pa_);
    f.makeup = hyd::check_valve_flow(makeup_, tank_pa_ - p_r);
    return f;
}

void CircuitA::derivative(std::span<const double> x, std::span<double> dx) const {
    const Flows f = flows(x);
    // Cross-port leakage keeps motor discharge equal to its intake.
    dx[kSupply] = hyd::pipe_pressure_rate(supply_, f.pump - f.motor_intake - f.relief, x[kSupply]);
    dx[kReturn] = hyd::pipe_pressure_rate(return_, f.motor_intake - f.pump + f.makeup, x[kReturn]);
    dx[kSpeed] = hyd::load_acceleration(load_, f.motor_torque, x[kSpeed]);
}

void CircuitA::project(std::span<double> x) const {
    x[kSupply] = std::max(x[kSupply], supply_.vapor_floor);
    x[kReturn] = std::max(x[kReturn], return_.vapor_floor);
}

double CircuitA::stiffness_bound() const {
    const double beta = supply_.bulk_modulus;
    const double g_leak = units::lpm_per_bar_to_si(pump_.slip_coeff + motor_.slip_coeff);
    const double g_relief = units::lpm_per_bar_to_si(relief_.gradient);
    const double g_makeup = units::lpm_per_bar_to_si(makeup_.gradient);
    // Gershgorin discs of the pressure sub-block.
    const double supply_row = beta / supply_.node_volume() * (2.0 * g_leak + g_relief);
    const double return_row = beta / return_.node_volume() * (2.0 * g_leak + g_makeup);
    // Hydraulic spring against the load inertia.
    const double d = units::cc_per_rev_to_si(motor_.displacement_cc);
    const double omega_n = d * std::sqrt(beta / load_.inertia * (1.0 / supply_.node_volume() + 1.0 / return_.node_volume()));
    return std::max({supply_row, return_row, omega_n});
}

sim::Observables CircuitA::observe(std::span<const double> x) const {
    const Flows f = flows(x);
    sim::Observables o;
    o.motor_speed_rpm = units::rads_to_rpm(x[kSpeed]);
    o.supply_pressure_bar = units::pa_to_bar(x[kSupply] - tank_pa_);
    o.pump_flow_lpm = {units::m3s_to_lpm(f.pump)};
    o.relief_flow_lpm = {units::m3s_to_lpm(f.relief)};
    o.motor_volumetric_eff = hyd::volumetric_efficiency(f.motor_ideal, f.motor_intake);
    return o;
}

sim::StateVector CircuitA::initial_state() const { return {0.0, {tank_pa_, tank_pa_, 0.0}}; }

CircuitA build_circuit_a(const DesignPointA& dp, const CalibrationRecord& cal) {
    validate(dp);
    return CircuitA(dp, cal);
}

sim::IntegratorConfig default_integrator() { return sim::IntegratorConfig{sim::Method::Rk4, 1e-3, 4.0, 10}; }

}  // namespace hydro::circuits
