#include "hydro/circuits/design.hpp"

#include <sstream>

namespace hydro::circuits {

const opt::ParameterSpace& design_space_a() {
    static const opt::ParameterSpace space({
        {"pump_disp", 10.0, 200.0, 1.0},
        {"motor_disp", 10.0, 1000.0, 1.0},
        {"pipe_diameter", 7.0, 60.0, 0.5},
    });
    return space;
}

const opt::ParameterSpace& design_space_b() {
    static const opt::ParameterSpace space({
        {"pump1_disp", 10.0, 750.0, 1.0},
        {"pm1_speed", 100.0, 2000.0, 1.0},
        {"pump2_disp", 10.0, 750.0, 1.0},
        {"pm2_speed", 100.0, 2000.0, 1.0},
    });
    return space;
}

DesignPointA design_a_from(std::span<const double> v) {
    if (v.size() != 3) throw DomainError("circuit A design point needs 3 values");
    return {v[0], v[1], v[2]};
}

DesignPointB design_b_from(std::span<const double> v) {
    if (v.size() != 4) throw DomainError("circuit B design point needs 4 values");
    return {v[0], v[1], v[2], v[3]};
}

std::vector<double> to_values(const DesignPointA& dp) { return {dp.pump_disp, dp.motor_disp, dp.pipe_diameter}; }

std::vector<double> to_values(const DesignPointB& dp) {
    return {dp.pump1_disp, dp.pm1_speed, dp.pump2_disp, dp.pm2_speed};
}

namespace {

void check_on_grid(const opt::ParameterSpace& space, const std::vector<double>& v, const char* circuit) {
    if (space.on_grid(v)) return;
    std::ostringstream os;
    os << "circuit " << circuit << " design point (";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ") is outside its bounds or off its grid";
    throw DomainError(os.str());
}

}  // namespace

void validate(const DesignPointA& dp) { check_on_grid(design_space_a(), to_values(dp), "A"); }

void validate(const DesignPointB& dp) { check_on_grid(design_space_b(), to_values(dp), "B"); }

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("cannot parse design point value '" + item + "'");
        }
    }
    return out;
}

}  // namespace hydro::circuits
