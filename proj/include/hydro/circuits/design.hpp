#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydro/opt/space.hpp"

namespace hydro::circuits {

/// Raised for design points outside their bounds or off their grid, and other
/// invalid arguments to circuit-level operations.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Simple transmission: pump and motor sizes plus connecting pipe bore.
struct DesignPointA {
    double pump_disp = 0.0;      // cc/rev
    double motor_disp = 0.0;     // cc/rev
    double pipe_diameter = 0.0;  // mm

    bool operator==(const DesignPointA&) const = default;
};

/// Boosted closed loop: boost pump + its drive speed, main pump + its drive speed.
struct DesignPointB {
    double pump1_disp = 0.0;  // cc/rev, boost
    double pm1_speed = 0.0;   // rpm
    double pump2_disp = 0.0;  // cc/rev, main
    double pm2_speed = 0.0;   // rpm

    bool operator==(const DesignPointB&) const = default;
};

/// pump [10, 200] step 1, motor [10, 1000] step 1, pipe [7, 60] step 0.5
const opt::ParameterSpace& design_space_a();
/// displacements [10, 750] step 1, speeds [100, 2000] step 1
const opt::ParameterSpace& design_space_b();

DesignPointA design_a_from(std::span<const double> values);
DesignPointB design_b_from(std::span<const double> values);
std::vector<double> to_values(const DesignPointA& dp);
std::vector<double> to_values(const DesignPointB& dp);

/// Throws DomainError when the point is out of bounds or off grid.
void validate(const DesignPointA& dp);
void validate(const DesignPointB& dp);

/// Parses "65,324,55" style lists; the count must match the circuit.
std::vector<double> parse_point(const std::string& text);

}  // namespace hydro::circuits
