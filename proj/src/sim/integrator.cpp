#include "hydro/sim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hydro::sim {

StateLayout::StateLayout(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!seen.insert(n).second) {
            throw std::invalid_argument("duplicate state name: " + n);
        }
    }
}

std::size_t StateLayout::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw std::out_of_range("unknown state name: " + name);
    }
    return static_cast<std::size_t>(it - names_.begin());
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrator dt must be > 0");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw std::invalid_argument("integrator duration must be > 0");
    if (sample_every < 1) throw std::invalid_argument("integrator sample_every must be >= 1");
}

std::size_t IntegratorConfig::step_count() const {
    // Rounds to the nearest step, so the final time lies within dt/2 of duration.
    return static_cast<std::size_t>(std::floor(duration / dt + 0.5));
}

DivergedSimulation::DivergedSimulation(double t)
    : std::runtime_error([t] {
          std::ostringstream os;
          os << "simulation diverged (non-finite state) at t = " << t << " s";
          return os.str();
      }()),
      time_(t) {}

namespace {

// Usable fraction of each method's real-axis stability interval
// (RK4: 2.785, forward Euler: 2).
double stability_limit(Method m) {
    return m == Method::Rk4 ? 2.5 : 1.8;
}

class Stepper {
  public:
    Stepper(const Network& net, Method method, std::size_t n)
        : net_(net), method_(method), k1_(n), k2_(n), k3_(n), k4_(n), w_(n) {}

    void step(std::vector<double>& x, double h) {
        const std::size_t n = x.size();
        net_.derivative(x, k1_);
        if (method_ == Method::Euler) {
            for (std::size_t i = 0; i < n; ++i) x[i] += h * k1_[i];
            net_.project(x);
            return;
        }
        for (std::size_t i = 0; i < n; ++i) w_[i] = x[i] + 0.5 * h * k1_[i];
        net_.derivative(w_, k2_);
        for (std::size_t i = 0; i < n; ++i) w_[i] = x[i] + 0.5 * h * k2_[i];
        net_.derivative(w_, k3_);
        for (std::size_t i = 0; i < n; ++i) w_[i] = x[i] + h * k3_[i];
        net_.derivative(w_, k4_);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
        }
        net_.project(x);
    }

  private:
    const Network& net_;
    Method method_;
    std::vector<double> k1_, k2_, k3_, k4_, w_;
};

bool all_finite(const std::vector<double>& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::size_t substeps_for(const Network& network, const IntegratorConfig& cfg) {
    const double lambda = network.stiffness_bound();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) return 1;
    const double needed = std::ceil(cfg.dt * lambda / stability_limit(cfg.method));
    return std::max<std::size_t>(1, static_cast<std::size_t>(needed));
}

SimulationResult integrate(const Network& network, const StateVector& init, const IntegratorConfig& cfg) {
    cfg.validate();
    if (init.values.size() != network.layout().size()) {
        throw std::invalid_argument("initial state does not match the network's state layout");
    }

    const std::size_t steps = cfg.step_count();
    const std::size_t sub = substeps_for(network, cfg);
    const double h = cfg.dt / static_cast<double>(sub);

    SimulationResult result;
    result.substeps = sub;
    result.samples.reserve(steps / cfg.sample_every + 2);

    std::vector<double> x = init.values;
    auto record = [&](double t) { result.samples.push_back(Sample{t, x, network.observe(x)}); };

    if (!all_finite(x)) throw DivergedSimulation(0.0);
    record(0.0);

    Stepper stepper(network, cfg.method, x.size());
    for (std::size_t k = 1; k <= steps; ++k) {
        for (std::size_t s = 0; s < sub; ++s) stepper.step(x, h);
        const double t = static_cast<double>(k) * cfg.dt;
        if (!all_finite(x)) throw DivergedSimulation(t);
        if (k % cfg.sample_every == 0) record(t);
    }
    const double t_end = static_cast<double>(steps) * cfg.dt;
    if (steps % cfg.sample_every != 0) record(t_end);

    result.final_state = StateVector{t_end, x};
    result.terminal = network.observe(x);
    return result;
}

SimulationResult integrate(const Network& network, const IntegratorConfig& cfg) {
    return integrate(network, network.initial_state(), cfg);
}

StateVector derivative(const Network& network, const StateVector& state) {
    if (state.values.size() != network.layout().size()) {
        throw std::invalid_argument("state does not match the network's state layout");
    }
    StateVector rates{state.t, std::vector<double>(state.values.size(), 0.0)};
    network.derivative(state.values, rates.values);
    return rates;
}

}  // namespace hydro::sim
