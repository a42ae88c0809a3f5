#include "hydro/circuits/fault.hpp"

#include <cmath>
#include <sstream>

#include "hydro/circuits/objective.hpp"

namespace hydro::circuits {

double simulated_volumetric_eff(const CalibrationRecord& cal, const DesignPointB& ref, double motor_slip,
                                const sim::IntegratorConfig& integ) {
    validate(ref);
    const CircuitB net(ref, motor_slip, cal);
    try {
        return sim::integrate(net, terminal_only(integ)).terminal.motor_volumetric_eff;
    } catch (const sim::DivergedSimulation& e) {
        throw CalibrationError(std::string("reference point does not converge: ") + e.what());
    }
}

double calibrate_fault(const CalibrationRecord& cal, const FaultConfig& fault, const DesignPointB& ref,
                       const sim::IntegratorConfig& integ, double slip_max) {
    const double target = fault.target_volumetric_eff;
    if (!(target > 0.0 && target <= 1.0)) throw CalibrationError("target volumetric efficiency must lie in (0, 1]");
    if (target == 1.0) return 0.0;

    constexpr double kTol = 1e-4;
    double lo = 0.0;
    double hi = slip_max;
    const double eff_lo = simulated_volumetric_eff(cal, ref, lo, integ);
    const double eff_hi = simulated_volumetric_eff(cal, ref, hi, integ);
    if (!(eff_lo >= target && eff_hi <= target)) {
        std::ostringstream os;
        os << "cannot bracket volumetric efficiency " << target << ": slip 0 gives " << eff_lo << ", slip "
           << slip_max << " gives " << eff_hi;
        throw CalibrationError(os.str());
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double eff = simulated_volumetric_eff(cal, ref, mid, integ);
        if (std::abs(eff - target) <= kTol) return mid;
        (eff > target ? lo : hi) = mid;
    }
    throw CalibrationError("volumetric efficiency bisection did not converge");
}

CalibrationRecord calibrate_record(CalibrationRecord cal, double target_eff, const sim::IntegratorConfig& integ) {
    cal.target_volumetric_eff = target_eff;
    cal.motor_b_slip_faulty = calibrate_fault(cal, FaultConfig{true, target_eff}, cal.reference_point, integ);
    cal.motor_b_slip_nominal =
        calibrate_fault(cal, FaultConfig{false, cal.nominal_volumetric_eff}, cal.reference_point, integ);
    return cal;
}

}  // namespace hydro::circuits
