#include "hydro/harness/export.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hydro::harness {

namespace {

void field(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    out << buf;
}

}  // namespace

void export_timeseries(const sim::SimulationResult& result, std::ostream& out) {
    if (result.samples.empty()) throw std::invalid_argument("simulation result has no samples");
    const bool feeder = result.samples.front().derived.relief_flow_lpm.size() > 1;
    out << "t_s,motor_speed_rpm,supply_pressure_bar,relief_flow_lpm";
    if (feeder) out << ",feeder_relief_flow_lpm";
    out << '\n';
    for (const auto& s : result.samples) {
        const auto& d = s.derived;
        field(out, s.t);
        out << ',';
        field(out, d.motor_speed_rpm);
        out << ',';
        field(out, d.supply_pressure_bar);
        out << ',';
        field(out, d.relief_flow_lpm.empty() ? 0.0 : d.relief_flow_lpm[0]);
        if (feeder) {
            out << ',';
            field(out, d.relief_flow_lpm[1]);
        }
        out << '\n';
    }
}

void export_timeseries(const sim::SimulationResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    export_timeseries(result, out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

sim::SimulationResult simulate_a(const std::vector<double>& point, const circuits::CalibrationRecord& cal,
                                 const sim::IntegratorConfig& integ) {
    const auto dp = circuits::design_a_from(point);
    return sim::integrate(circuits::build_circuit_a(dp, cal), integ);
}

sim::SimulationResult simulate_b(const std::vector<double>& point, bool fault, const circuits::CalibrationRecord& cal,
                                 const sim::IntegratorConfig& integ) {
    const auto dp = circuits::design_b_from(point);
    return sim::integrate(circuits::build_circuit_b(dp, circuits::FaultConfig{fault, cal.target_volumetric_eff}, cal),
                          integ);
}

}  // namespace hydro::harness
