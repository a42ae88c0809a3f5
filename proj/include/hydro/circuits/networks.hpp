#pragma once

#include <span>

#include "hydro/circuits/calibration.hpp"
#include "hydro/circuits/design.hpp"
#include "hydro/hydraulics/components.hpp"
#include "hydro/sim/integrator.hpp"
#include "hydro/sim/network.hpp"

namespace hydro::circuits {

/// Simple transmission. Prime mover -> pump -> supply line -> motor -> load,
/// relief valve from the supply line to tank, motor discharge through the
/// return line back to the pump inlet. A make-up check valve lets tank oil into
/// the return line so relief losses do not cavitate the loop.
///
/// State: {supply_pressure, return_pressure (Pa abs), load_speed (rad/s)}.
class CircuitA final : public sim::Network {
  public:
    CircuitA(const DesignPointA& dp, const CalibrationRecord& cal);

    struct Flows {
        double pump = 0.0;        // m^3/s into the supply line
        double motor_intake = 0.0;
        double motor_ideal = 0.0;
        double relief = 0.0;
        double makeup = 0.0;
        double motor_torque = 0.0;
    };

    Flows flows(std::span<const double> state) const;

    const sim::StateLayout& layout() const override { return layout_; }
    void derivative(std::span<const double> state, std::span<double> rates) const override;
    void project(std::span<double> state) const override;
    double stiffness_bound() const override;
    sim::Observables observe(std::span<const double> state) const override;
    sim::StateVector initial_state() const override;

    const DesignPointA& design() const { return design_; }

  private:
    DesignPointA design_;
    sim::StateLayout layout_;
    hyd::PrimeMoverParams prime_mover_;
    hyd::PumpParams pump_;
    hyd::MotorParams motor_;
    hyd::ReliefValveParams relief_;
    hyd::CheckValveParams makeup_;
    hyd::PipeParams supply_;
    hyd::PipeParams return_;
    hyd::LoadParams load_;
    double tank_pa_;
};

struct FaultConfig {
    bool faulty = true;
    double target_volumetric_eff = 0.75;

    void validate() const;
};

/// Closed loop with boost. Main pump (prime mover 2) -> supply line -> motor
/// -> return line -> main pump; cross-port relief from supply to return. The
/// boost pump (prime mover 1) fills a feeder line that discharges through a
/// check valve into the return line, with its own relief valve to tank. Motor
/// leakage is split between cross-port slip and case drain.
///
/// State: {supply_pressure, return_pressure, feeder_pressure (Pa abs), load_speed (rad/s)}.
class CircuitB final : public sim::Network {
  public:
    /// `motor_slip` in (L/min)/bar; drain leakage follows the calibrated ratio.
    CircuitB(const DesignPointB& dp, double motor_slip, const CalibrationRecord& cal);

    struct Flows {
        double main_pump = 0.0;
        double boost_pump = 0.0;
        double motor_intake = 0.0;
        double motor_discharge = 0.0;
        double motor_ideal = 0.0;
        double main_relief = 0.0;
        double feeder_relief = 0.0;
        double check = 0.0;
        double motor_torque = 0.0;
    };

    Flows flows(std::span<const double> state) const;

    const sim::StateLayout& layout() const override { return layout_; }
    void derivative(std::span<const double> state, std::span<double> rates) const override;
    void project(std::span<double> state) const override;
    double stiffness_bound() const override;
    sim::Observables observe(std::span<const double> state) const override;
    sim::StateVector initial_state() const override;

    const DesignPointB& design() const { return design_; }
    const hyd::MotorParams& motor() const { return motor_; }

  private:
    DesignPointB design_;
    sim::StateLayout layout_;
    hyd::PrimeMoverParams boost_drive_;
    hyd::PrimeMoverParams main_drive_;
    hyd::PumpParams boost_pump_;
    hyd::PumpParams main_pump_;
    hyd::MotorParams motor_;
    hyd::ReliefValveParams relief_;
    hyd::CheckValveParams check_;
    hyd::PipeParams supply_;
    hyd::PipeParams return_;
    hyd::PipeParams feeder_;
    hyd::LoadParams load_;
    double tank_pa_;
};

/// Throws DomainError for out-of-bounds points.
CircuitA build_circuit_a(const DesignPointA& dp, const CalibrationRecord& cal);

/// Uses the calibrated faulty or nominal motor slip; throws CalibrationError
/// when the record has not been calibrated yet.
CircuitB build_circuit_b(const DesignPointB& dp, const FaultConfig& fault, const CalibrationRecord& cal);

/// Default integration settings: RK4, 1 ms, 4 s, every 10th step sampled.
sim::IntegratorConfig default_integrator();

}  // namespace hydro::circuits
