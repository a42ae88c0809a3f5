#include "hydro/circuits/calibration.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hydro::hyd {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ReliefValveParams, cracking_pressure, gradient)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(CheckValveParams, cracking_pressure, gradient)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(LoadParams, inertia, stiction, coulomb, viscous, windage,
                                                applied_torque)

}  // namespace hydro::hyd

namespace hydro::circuits {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DesignPointB, pump1_disp, pm1_speed, pump2_disp, pm2_speed)

namespace {

using nlohmann::json;

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

std::string to_json(const CalibrationRecord& c) {
    json j;
    j["bulk_modulus_pa"] = c.bulk_modulus_pa;
    j["pipe_length_m"] = c.pipe_length_m;
    j["vapor_floor_pa"] = c.vapor_floor_pa;
    j["tank_pressure_pa"] = c.tank_pressure_pa;
    j["port_volume_l"] = c.port_volume_l;
    j["relief_valve"] = c.relief;
    j["check_valve"] = c.check;
    j["makeup_check_valve"] = c.makeup;
    j["pump_slip_per_cc"] = c.pump_slip_per_cc;
    j["motor_visc_friction"] = c.motor_visc_friction;
    j["prime_mover_rpm_a"] = c.prime_mover_rpm_a;
    j["motor_a_slip_per_cc"] = c.motor_a_slip_per_cc;
    j["load_a"] = c.load_a;
    j["motor_b_displacement_cc"] = c.motor_b_displacement_cc;
    j["motor_b_drain_ratio"] = c.motor_b_drain_ratio;
    j["supply_diameter_b_mm"] = c.supply_diameter_b_mm;
    j["return_diameter_b_mm"] = c.return_diameter_b_mm;
    j["feeder_diameter_b_mm"] = c.feeder_diameter_b_mm;
    j["load_b"] = c.load_b;
    j["target_volumetric_eff"] = c.target_volumetric_eff;
    j["nominal_volumetric_eff"] = c.nominal_volumetric_eff;
    j["reference_point"] = c.reference_point;
    j["motor_b_slip_faulty"] = optional_to_json(c.motor_b_slip_faulty);
    j["motor_b_slip_nominal"] = optional_to_json(c.motor_b_slip_nominal);
    j["units"] = {
        {"pressures", "Pa absolute unless suffixed; valve cracking pressures in bar"},
        {"leakage", "(L/min)/bar; *_per_cc fields are per cc/rev of displacement"},
        {"valve_gradient", "(L/min)/bar above cracking"},
        {"load", "inertia kg.m^2, stiction/coulomb/applied N.m, viscous N.m/(rad/s), windage N.m/(rad/s)^2"},
        {"speeds", "rpm"},
        {"diameters", "mm"},
    };
    return j.dump(2) + "\n";
}

CalibrationRecord calibration_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CalibrationError(std::string("malformed calibration JSON: ") + e.what());
    }
    CalibrationRecord c;
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    try {
        get("bulk_modulus_pa", c.bulk_modulus_pa);
        get("pipe_length_m", c.pipe_length_m);
        get("vapor_floor_pa", c.vapor_floor_pa);
        get("tank_pressure_pa", c.tank_pressure_pa);
        get("port_volume_l", c.port_volume_l);
        get("relief_valve", c.relief);
        get("check_valve", c.check);
        get("makeup_check_valve", c.makeup);
        get("pump_slip_per_cc", c.pump_slip_per_cc);
        get("motor_visc_friction", c.motor_visc_friction);
        get("prime_mover_rpm_a", c.prime_mover_rpm_a);
        get("motor_a_slip_per_cc", c.motor_a_slip_per_cc);
        get("load_a", c.load_a);
        get("motor_b_displacement_cc", c.motor_b_displacement_cc);
        get("motor_b_drain_ratio", c.motor_b_drain_ratio);
        get("supply_diameter_b_mm", c.supply_diameter_b_mm);
        get("return_diameter_b_mm", c.return_diameter_b_mm);
        get("feeder_diameter_b_mm", c.feeder_diameter_b_mm);
        get("load_b", c.load_b);
        get("target_volumetric_eff", c.target_volumetric_eff);
        get("nominal_volumetric_eff", c.nominal_volumetric_eff);
        get("reference_point", c.reference_point);
        c.motor_b_slip_faulty = optional_from_json(j, "motor_b_slip_faulty");
        c.motor_b_slip_nominal = optional_from_json(j, "motor_b_slip_nominal");
    } catch (const json::exception& e) {
        throw CalibrationError(std::string("invalid calibration field: ") + e.what());
    }
    return c;
}

void save_calibration(const CalibrationRecord& cal, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write calibration file: " + path);
    out << to_json(cal);
    if (!out) throw std::runtime_error("failed writing calibration file: " + path);
}

CalibrationRecord load_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CalibrationError("calibration file '" + path +
                               "' not found; create it with: hydro-opt calibrate --target-eff 0.75 --out " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return calibration_from_json(ss.str());
}

}  // namespace hydro::circuits
