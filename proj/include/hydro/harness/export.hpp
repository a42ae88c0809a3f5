#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hydro/circuits/calibration.hpp"
#include "hydro/circuits/networks.hpp"
#include "hydro/sim/integrator.hpp"

namespace hydro::harness {

/// t_s,motor_speed_rpm,supply_pressure_bar,relief_flow_lpm[,feeder_relief_flow_lpm]
/// with six significant digits. The feeder column appears when the samples
/// carry a second relief flow.
void export_timeseries(const sim::SimulationResult& result, std::ostream& out);
void export_timeseries(const sim::SimulationResult& result, const std::string& path);

sim::SimulationResult simulate_a(const std::vector<double>& point, const circuits::CalibrationRecord& cal,
                                 const sim::IntegratorConfig& integ = circuits::default_integrator());
sim::SimulationResult simulate_b(const std::vector<double>& point, bool fault, const circuits::CalibrationRecord& cal,
                                 const sim::IntegratorConfig& integ = circuits::default_integrator());

}  // namespace hydro::harness
