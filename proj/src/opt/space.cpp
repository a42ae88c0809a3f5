#include "hydro/opt/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hydro::opt {

std::int64_t ParameterSpec::levels() const { return std::llround((upper - lower) / step); }

double ParameterSpec::value(std::int64_t index) const { return lower + static_cast<double>(index) * step; }

std::int64_t ParameterSpec::snap(double v) const {
    const auto k = std::llround((v - lower) / step);
    return std::clamp<std::int64_t>(k, 0, levels());
}

ParameterSpace::ParameterSpace(std::vector<ParameterSpec> params) : params_(std::move(params)) {
    for (const auto& p : params_) {
        if (!(p.step > 0.0) || !(p.upper > p.lower)) {
            throw std::invalid_argument("parameter '" + p.name + "' needs lower < upper and step > 0");
        }
        const double n = (p.upper - p.lower) / p.step;
        if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
            throw std::invalid_argument("parameter '" + p.name + "' range is not a whole number of steps");
        }
    }
}

std::vector<double> ParameterSpace::values(const GridPoint& p) const {
    if (p.size() != params_.size()) throw std::invalid_argument("grid point has wrong dimension");
    std::vector<double> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = params_[i].value(p[i]);
    return v;
}

GridPoint ParameterSpace::snap(std::span<const double> values) const {
    if (values.size() != params_.size()) throw std::invalid_argument("value vector has wrong dimension");
    GridPoint g(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) g[i] = params_[i].snap(values[i]);
    return g;
}

GridPoint ParameterSpace::clamp(GridPoint p) const {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp<std::int64_t>(p[i], 0, params_[i].levels());
    return p;
}

bool ParameterSpace::contains(const GridPoint& p) const {
    if (p.size() != params_.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0 || p[i] > params_[i].levels()) return false;
    }
    return true;
}

bool ParameterSpace::on_grid(std::span<const double> values) const {
    if (values.size() != params_.size()) return false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& p = params_[i];
        const double k = (values[i] - p.lower) / p.step;
        if (k < -1e-9 || k > static_cast<double>(p.levels()) + 1e-9) return false;
        if (std::abs(k - std::round(k)) > 1e-9) return false;
    }
    return true;
}

GridPoint ParameterSpace::random_point(std::mt19937_64& rng) const {
    GridPoint g(params_.size());
    for (std::size_t i = 0; i < params_.size(); ++i) {
        std::uniform_int_distribution<std::int64_t> dist(0, params_[i].levels());
        g[i] = dist(rng);
    }
    return g;
}

}  // namespace hydro::opt
