#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hydro::sim {

/// Ordered, uniquely named state entries. The order is fixed once built.
class StateLayout {
  public:
    StateLayout() = default;
    explicit StateLayout(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    /// Throws std::out_of_range for an unknown name.
    std::size_t index_of(const std::string& name) const;

    bool operator==(const StateLayout&) const = default;

  private:
    std::vector<std::string> names_;
};

struct StateVector {
    double t = 0.0;
    std::vector<double> values;
};

/// Quantities derived from a state: what the objectives and the trace export look at.
/// Flows are in L/min, speed in rpm, pressure in bar (gauge).
struct Observables {
    double motor_speed_rpm = 0.0;
    double supply_pressure_bar = 0.0;
    std::vector<double> pump_flow_lpm;
    std::vector<double> relief_flow_lpm;
    double motor_volumetric_eff = 1.0;
};

using TerminalMetrics = Observables;

/// A lumped-parameter network: a fixed state layout plus an autonomous
/// state-derivative function.
class Network {
  public:
    virtual ~Network() = default;

    virtual const StateLayout& layout() const = 0;

    /// Pure; writes d(state)/dt into `rates` (same size as the layout).
    virtual void derivative(std::span<const double> state, std::span<double> rates) const = 0;

    /// Maps a state back into its admissible set after each step (e.g. vapor clamp).
    virtual void project(std::span<double> /*state*/) const {}

    /// Upper estimate of the magnitude of the fastest eigenvalue of the
    /// linearised system (1/s). Zero means "not stiff".
    virtual double stiffness_bound() const { return 0.0; }

    virtual Observables observe(std::span<const double> /*state*/) const { return {}; }

    /// Initial condition for a fresh simulation.
    virtual StateVector initial_state() const {
        return StateVector{0.0, std::vector<double>(layout().size(), 0.0)};
    }
};

}  // namespace hydro::sim
