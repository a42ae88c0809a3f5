#include "hydro/circuits/objective.hpp"

#include <algorithm>
#include <cmath>

namespace hydro::circuits {

void ObjectiveConfigA::validate() const {
    if (!(desired_speed > 0.0)) throw DomainError("desired speed must be > 0");
    if (pump_upper_bound != design_space_a()[0].upper) {
        throw DomainError("pump upper bound must equal the pump displacement upper bound");
    }
}

void ObjectiveConfigB::validate() const {
    if (!(desired_speed > 0.0)) throw DomainError("desired speed must be > 0");
}

namespace {

double relief_factor(const BranchFlows& b) { return 1.0 + b.relief_flow / b.pump_flow; }

}  // namespace

double objective_a(const sim::TerminalMetrics& m, const DesignPointA& dp, const ObjectiveConfigA& cfg) {
    if (m.pump_flow_lpm.empty() || m.relief_flow_lpm.empty()) throw DomainError("objective_a needs pump and relief flows");
    const double pump = m.pump_flow_lpm[0];
    if (!(pump > 0.0)) return kDivergencePenalty;
    const double err = cfg.desired_speed - m.motor_speed_rpm;
    return err * err * (1.0 + dp.pump_disp / cfg.pump_upper_bound) * relief_factor({pump, m.relief_flow_lpm[0]});
}

double objective_b(double actual_speed, const BranchFlows& main, const BranchFlows& feeder,
                   const ObjectiveConfigB& cfg) {
    if (!(main.pump_flow > 0.0) || !(feeder.pump_flow > 0.0)) return kDivergencePenalty;
    const double err = cfg.desired_speed - actual_speed;
    return err * err * relief_factor(main) * relief_factor(feeder);
}

double objective_b(const sim::TerminalMetrics& m, const ObjectiveConfigB& cfg) {
    if (m.pump_flow_lpm.size() < 2 || m.relief_flow_lpm.size() < 2) {
        throw DomainError("objective_b needs main and feeder branch flows");
    }
    return objective_b(m.motor_speed_rpm, {m.pump_flow_lpm[0], m.relief_flow_lpm[0]},
                       {m.pump_flow_lpm[1], m.relief_flow_lpm[1]}, cfg);
}

double lossless_speed(double pm_speed, double pump_disp, double motor_disp) {
    if (motor_disp == 0.0) throw DomainError("lossless_speed: motor displacement must be non-zero");
    return pm_speed * pump_disp / motor_disp;
}

sim::IntegratorConfig terminal_only(sim::IntegratorConfig integ) {
    integ.sample_every = std::max<std::size_t>(1, integ.step_count());
    return integ;
}

double evaluate_a(const DesignPointA& dp, const CalibrationRecord& cal, const ObjectiveConfigA& cfg,
                  const sim::IntegratorConfig& integ) {
    const CircuitA net = build_circuit_a(dp, cal);
    try {
        const auto result = sim::integrate(net, integ);
        return objective_a(result.terminal, dp, cfg);
    } catch (const sim::DivergedSimulation&) {
        return kDivergencePenalty;
    }
}

double evaluate_b(const DesignPointB& dp, const FaultConfig& fault, const CalibrationRecord& cal,
                  const ObjectiveConfigB& cfg, const sim::IntegratorConfig& integ) {
    const CircuitB net = build_circuit_b(dp, fault, cal);
    try {
        const auto result = sim::integrate(net, integ);
        return objective_b(result.terminal, cfg);
    } catch (const sim::DivergedSimulation&) {
        return kDivergencePenalty;
    }
}

opt::Objective make_objective_a(const CalibrationRecord& cal, const ObjectiveConfigA& cfg,
                                const sim::IntegratorConfig& integ) {
    cfg.validate();
    return [cal, cfg, integ = terminal_only(integ)](std::span<const double> v) {
        return evaluate_a(design_a_from(v), cal, cfg, integ);
    };
}

opt::Objective make_objective_b(const CalibrationRecord& cal, const FaultConfig& fault, const ObjectiveConfigB& cfg,
                                const sim::IntegratorConfig& integ) {
    cfg.validate();
    if (!cal.has_fault_slips()) {
        throw CalibrationError(
            "calibration record has no solved motor slip; run: hydro-opt calibrate --target-eff 0.75 --out "
            "calibration.json");
    }
    return [cal, fault, cfg, integ = terminal_only(integ)](std::span<const double> v) {
        return evaluate_b(design_b_from(v), fault, cal, cfg, integ);
    };
}

}  // namespace hydro::circuits
