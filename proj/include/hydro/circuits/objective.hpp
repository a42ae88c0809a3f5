#pragma once

#include "hydro/circuits/calibration.hpp"
#include "hydro/circuits/design.hpp"
#include "hydro/circuits/networks.hpp"
#include "hydro/opt/space.hpp"
#include "hydro/sim/integrator.hpp"

namespace hydro::circuits {

/// Returned for diverged simulations and non-positive pump flow. Finite so
/// optimizers can still rank it.
inline constexpr double kDivergencePenalty = 1e9;

struct ObjectiveConfigA {
    double desired_speed = 300.0;     // rpm
    double pump_upper_bound = 200.0;  // cc/rev, equals the pump_disp upper bound

    void validate() const;
};

struct ObjectiveConfigB {
    double desired_speed = 300.0;  // rpm

    void validate() const;
};

/// (w_d - w_a)^2 * (1 + P_D/P_UB) * (1 + RV/P_flow), using terminal values.
double objective_a(const sim::TerminalMetrics& m, const DesignPointA& dp, const ObjectiveConfigA& cfg);

struct BranchFlows {
    double pump_flow = 0.0;    // L/min
    double relief_flow = 0.0;  // L/min
};

/// (w_d - w_a)^2 * (1 + RV/P)_main * (1 + RV/P)_feeder.
double objective_b(double actual_speed, const BranchFlows& main, const BranchFlows& feeder,
                   const ObjectiveConfigB& cfg);

/// Reads the main branch from index 0 and the feeder branch from index 1.
double objective_b(const sim::TerminalMetrics& m, const ObjectiveConfigB& cfg);

/// Kinematic speed of a loss-free transmission: pm_speed * P_D / M_D.
double lossless_speed(double pm_speed, double pump_disp, double motor_disp);

/// Builds, simulates and scores one design point. Divergence maps to
/// kDivergencePenalty; out-of-bounds points throw DomainError.
double evaluate_a(const DesignPointA& dp, const CalibrationRecord& cal, const ObjectiveConfigA& cfg,
                  const sim::IntegratorConfig& integ);
double evaluate_b(const DesignPointB& dp, const FaultConfig& fault, const CalibrationRecord& cal,
                  const ObjectiveConfigB& cfg, const sim::IntegratorConfig& integ);

/// Objective callables over physical parameter values for the optimizers.
/// They share nothing mutable, so concurrent calls are safe.
opt::Objective make_objective_a(const CalibrationRecord& cal, const ObjectiveConfigA& cfg,
                                const sim::IntegratorConfig& integ);
opt::Objective make_objective_b(const CalibrationRecord& cal, const FaultConfig& fault, const ObjectiveConfigB& cfg,
                                const sim::IntegratorConfig& integ);

/// Integration settings for optimizer evaluations: only terminal values are needed.
sim::IntegratorConfig terminal_only(sim::IntegratorConfig integ);

}  // namespace hydro::circuits
