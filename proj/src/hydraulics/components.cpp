#include "hydro/hydraulics/components.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hydro/hydraulics/units.hpp"

namespace hydro::hyd {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

double sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

void PumpParams::validate() const {
    require(displacement_cc > 0.0, "pump displacement must be > 0");
    require(slip_coeff >= 0.0, "pump slip coefficient must be >= 0");
    require(visc_friction >= 0.0 && press_friction >= 0.0, "pump friction coefficients must be >= 0");
}

double pump_flow(const PumpParams& p, double shaft_speed, double dp) {
    return units::cc_per_rev_to_si(p.displacement_cc) * shaft_speed - units::lpm_per_bar_to_si(p.slip_coeff) * dp;
}

double pump_torque(const PumpParams& p, double shaft_speed, double dp) {
    return units::cc_per_rev_to_si(p.displacement_cc) * dp + p.visc_friction * shaft_speed +
           sign(shaft_speed) * units::per_bar_to_per_pa(p.press_friction) * std::abs(dp);
}

void MotorParams::validate() const {
    require(displacement_cc > 0.0, "motor displacement must be > 0");
    require(slip_coeff >= 0.0 && drain_coeff >= 0.0, "motor leakage coefficients must be >= 0");
    require(visc_friction >= 0.0 && press_friction >= 0.0, "motor friction coefficients must be >= 0");
}

MotorResponse motor_behavior(const MotorParams& m, double shaft_speed, double dp) {
    const double d = units::cc_per_rev_to_si(m.displacement_cc);
    MotorResponse r;
    r.intake_flow = d * shaft_speed + units::lpm_per_bar_to_si(m.slip_coeff) * dp;
    r.torque = d * dp - m.visc_friction * shaft_speed -
               sign(shaft_speed) * units::per_bar_to_per_pa(m.press_friction) * std::abs(dp);
    return r;
}

MotorPorts motor_ports(const MotorParams& m, double shaft_speed, double p_a, double p_b, double p_tank) {
    const double dp = p_a - p_b;
    const MotorResponse core = motor_behavior(m, shaft_speed, dp);
    const double g_drain = units::lpm_per_bar_to_si(m.drain_coeff);
    const double drain_a = g_drain * (p_a - p_tank);
    const double drain_b = g_drain * (p_b - p_tank);

    MotorPorts ports;
    ports.intake_flow = core.intake_flow + drain_a;
    ports.discharge_flow = core.intake_flow - drain_b;
    ports.drain_flow = drain_a + drain_b;
    ports.torque = core.torque;
    return ports;
}

double volumetric_efficiency(double ideal_flow, double intake_flow) {
    if (!(intake_flow > 0.0)) return 1.0;
    return ideal_flow / intake_flow;
}

void ReliefValveParams::validate() const {
    require(cracking_pressure > 0.0, "relief valve cracking pressure must be > 0");
    require(gradient > 0.0, "relief valve gradient must be > 0");
}

double relief_valve_flow(const ReliefValveParams& v, double dp) {
    const double over = dp - units::bar_to_pa(v.cracking_pressure);
    return over > 0.0 ? units::lpm_per_bar_to_si(v.gradient) * over : 0.0;
}

void CheckValveParams::validate() const {
    require(cracking_pressure >= 0.0, "check valve cracking pressure must be >= 0");
    require(gradient > 0.0, "check valve gradient must be > 0");
}

double check_valve_flow(const CheckValveParams& v, double dp) {
    const double over = dp - units::bar_to_pa(v.cracking_pressure);
    return over > 0.0 ? units::lpm_per_bar_to_si(v.gradient) * over : 0.0;
}

void PipeParams::validate() const {
    require(diameter_mm > 0.0, "pipe diameter must be > 0");
    require(length_m > 0.0, "pipe length must be > 0");
    require(bulk_modulus > 0.0, "bulk modulus must be > 0");
    require(port_volume >= 0.0, "port volume must be >= 0");
}

double PipeParams::volume() const {
    const double r = 0.5e-3 * diameter_mm;
    return units::kPi * r * r * length_m;
}

double PipeParams::node_volume() const { return volume() + port_volume; }

double pipe_pressure_rate(const PipeParams& p, double net_inflow, double pressure) {
    if (pressure <= p.vapor_floor && net_inflow < 0.0) return 0.0;
    return p.bulk_modulus * net_inflow / p.node_volume();
}

void LoadParams::validate() const {
    require(inertia > 0.0, "load inertia must be > 0");
    require(stiction >= 0.0 && coulomb >= 0.0 && viscous >= 0.0 && windage >= 0.0,
            "load friction terms must be >= 0");
}

double load_friction_torque(const LoadParams& l, double speed) {
    const double w = std::abs(speed);
    return sign(speed) * (l.coulomb + l.viscous * w + l.windage * w * w);
}

double load_acceleration(const LoadParams& l, double net_torque, double speed) {
    const double drive = net_torque - l.applied_torque;
    if (std::abs(speed) < kStictionBand && std::abs(drive) <= l.stiction) return 0.0;
    // Breakaway from rest: Coulomb friction opposes the direction the drive pushes.
    const double dir = std::abs(speed) < kStictionBand ? sign(drive) : sign(speed);
    const double w = std::abs(speed);
    const double friction = dir * (l.coulomb + l.viscous * w + l.windage * w * w);
    return (drive - friction) / l.inertia;
}

void PrimeMoverParams::validate() const { require(speed_rpm > 0.0, "prime mover speed must be > 0"); }

double PrimeMoverParams::shaft_speed() const { return units::rpm_to_rads(speed_rpm); }

}  // namespace hydro::hyd
