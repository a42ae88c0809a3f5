#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydro/sim/network.hpp"

namespace hydro::sim {

enum class Method { Rk4, Euler };

struct IntegratorConfig {
    Method method = Method::Rk4;
    double dt = 1e-3;          // s, output grid step
    double duration = 4.0;     // s
    std::size_t sample_every = 10;

    void validate() const;

    std::size_t step_count() const;
};

struct Sample {
    double t = 0.0;
    std::vector<double> values;
    Observables derived;
};

struct SimulationResult {
    std::vector<Sample> samples;
    TerminalMetrics terminal;
    StateVector final_state;
    std::size_t substeps = 1;  // internal RK sub-steps per output step
};

/// Thrown when the state becomes non-finite.
class DivergedSimulation : public std::runtime_error {
  public:
    explicit DivergedSimulation(double t);
    double time() const { return time_; }

  private:
    double time_;
};

/// Number of equal internal sub-steps per `cfg.dt` so that `stiffness_bound * h`
/// stays inside the explicit method's stability interval.
std::size_t substeps_for(const Network& network, const IntegratorConfig& cfg);

/// Fixed-step integration over [0, duration]. Deterministic: identical inputs
/// produce bit-identical outputs.
SimulationResult integrate(const Network& network, const StateVector& init, const IntegratorConfig& cfg);

/// Convenience: integrate from `network.initial_state()`.
SimulationResult integrate(const Network& network, const IntegratorConfig& cfg);

/// Evaluates the network's state derivative once.
StateVector derivative(const Network& network, const StateVector& state);

}  // namespace hydro::sim
