#pragma once

#include "hydro/circuits/calibration.hpp"
#include "hydro/circuits/networks.hpp"
#include "hydro/sim/integrator.hpp"

namespace hydro::circuits {

/// Motor volumetric efficiency at the end of a simulation of `ref` with the
/// given motor slip coefficient ((L/min)/bar).
double simulated_volumetric_eff(const CalibrationRecord& cal, const DesignPointB& ref, double motor_slip,
                                const sim::IntegratorConfig& integ);

/// Bisects the motor slip coefficient over [0, slip_max] until the simulated
/// volumetric efficiency at `ref` matches `fault.target_volumetric_eff`
/// (within 1e-4 absolute). A target of 1 gives 0. Throws CalibrationError if
/// the target is not bracketed or the reference point does not converge.
double calibrate_fault(const CalibrationRecord& cal, const FaultConfig& fault, const DesignPointB& ref,
                       const sim::IntegratorConfig& integ = default_integrator(), double slip_max = 50.0);

/// Solves both the faulty and the nominal slip at the record's reference point.
CalibrationRecord calibrate_record(CalibrationRecord cal, double target_eff,
                                   const sim::IntegratorConfig& integ = default_integrator());

}  // namespace hydro::circuits
