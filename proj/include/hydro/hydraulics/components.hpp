#pragma once

// Lumped component laws for the transmission circuits. Every function is pure
// and works in SI (m^3/s, Pa, rad/s, N.m); parameter structs are stored in
// catalogue units (cc/rev, (L/min)/bar, bar, mm) and converted on use.

namespace hydro::hyd {

/// Fixed-displacement pump (gear, vane or piston). Steady-state port law.
struct PumpParams {
    double displacement_cc = 0.0;     // cc/rev
    double slip_coeff = 0.0;          // (L/min)/bar, cross-port leakage
    double visc_friction = 0.0;       // N.m/(rad/s)
    double press_friction = 0.0;      // N.m/bar

    void validate() const;
    bool operator==(const PumpParams&) const = default;
};

/// Delivered flow, Q = D.w/(2.pi) - Cs.dp. Goes negative once slip exceeds the
/// ideal flow.
double pump_flow(const PumpParams& p, double shaft_speed, double dp);

/// Shaft torque the prime mover has to supply.
double pump_torque(const PumpParams& p, double shaft_speed, double dp);

/// Fixed-displacement motor. `slip_coeff` is cross-port leakage (port A to B);
/// `drain_coeff` is external leakage from each port to the case drain.
struct MotorParams {
    double displacement_cc = 0.0;     // cc/rev
    double slip_coeff = 0.0;          // (L/min)/bar
    double drain_coeff = 0.0;         // (L/min)/bar
    double visc_friction = 0.0;       // N.m/(rad/s)
    double press_friction = 0.0;      // N.m/bar

    void validate() const;
    bool operator==(const MotorParams&) const = default;
};

struct MotorResponse {
    double intake_flow = 0.0;  // m^3/s drawn from the high-pressure port
    double torque = 0.0;       // N.m delivered to the shaft
};

/// Q_in = D.w/(2.pi) + Cs.dp, T = D.dp/(2.pi) - friction. Ignores drain leakage.
MotorResponse motor_behavior(const MotorParams& m, double shaft_speed, double dp);

struct MotorPorts {
    double intake_flow = 0.0;     // from port A
    double discharge_flow = 0.0;  // into port B
    double drain_flow = 0.0;      // to case/tank
    double torque = 0.0;
};

/// Full port balance including case drain: intake - discharge == drain.
MotorPorts motor_ports(const MotorParams& m, double shaft_speed, double p_a, double p_b, double p_tank);

/// Ideal flow over actual intake. 1 when the intake is not positive.
double volumetric_efficiency(double ideal_flow, double intake_flow);

/// Single-stage relief valve, no dynamics, linear override.
struct ReliefValveParams {
    double cracking_pressure = 100.0;  // bar
    double gradient = 10.0;            // (L/min)/bar above cracking

    void validate() const;
    bool operator==(const ReliefValveParams&) const = default;
};

/// `dp` is the pressure across the valve (Pa). Zero at and below cracking.
double relief_valve_flow(const ReliefValveParams& v, double dp);

/// Free or spring-loaded check valve; instantaneous, no reverse flow.
struct CheckValveParams {
    double cracking_pressure = 0.0;  // bar
    double gradient = 50.0;          // (L/min)/bar

    void validate() const;
    bool operator==(const CheckValveParams&) const = default;
};

double check_valve_flow(const CheckValveParams& v, double dp);

/// Frictionless constant-volume compressible line.
struct PipeParams {
    double diameter_mm = 0.0;
    double length_m = 1.0;
    double bulk_modulus = 1.4e9;  // Pa
    double vapor_floor = 1e3;     // Pa absolute
    double port_volume = 0.0;     // m^3 of component passages lumped onto the line

    void validate() const;
    bool operator==(const PipeParams&) const = default;
    double volume() const;       // m^3, bore only
    double node_volume() const;  // m^3, bore plus port volume
};

/// dP/dt = beta.Q/V over the node volume, held at zero while at the vapor floor
/// and still draining.
double pipe_pressure_rate(const PipeParams& p, double net_inflow, double pressure);

/// Rotary load with stiction, Coulomb, viscous and windage friction plus a
/// constant opposing torque.
struct LoadParams {
    double inertia = 50.0;        // kg.m^2
    double stiction = 0.0;        // N.m
    double coulomb = 0.0;         // N.m
    double viscous = 0.0;         // N.m/(rad/s)
    double windage = 0.0;         // N.m/(rad/s)^2
    double applied_torque = 0.0;  // N.m

    void validate() const;
    bool operator==(const LoadParams&) const = default;
};

/// Speeds below this magnitude count as "at rest" for stiction.
inline constexpr double kStictionBand = 1e-4;  // rad/s

double load_friction_torque(const LoadParams& l, double speed);

double load_acceleration(const LoadParams& l, double net_torque, double speed);

/// Constant-speed electric or diesel drive.
struct PrimeMoverParams {
    double speed_rpm = 1500.0;

    void validate() const;
    bool operator==(const PrimeMoverParams&) const = default;
    double shaft_speed() const;  // rad/s
};

}  // namespace hydro::hyd
