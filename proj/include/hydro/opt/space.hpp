#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hydro::opt {

/// One bounded decision variable on a uniform grid: lower + k*step, k = 0..levels.
struct ParameterSpec {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    double step = 1.0;

    /// Index of the upper bound (grid has levels()+1 points).
    std::int64_t levels() const;
    double value(std::int64_t index) const;
    /// Nearest grid index, clamped to the bounds.
    std::int64_t snap(double value) const;
};

/// A design point expressed as grid indices; equality is exact grid equality.
using GridPoint = std::vector<std::int64_t>;

class ParameterSpace {
  public:
    ParameterSpace() = default;
    explicit ParameterSpace(std::vector<ParameterSpec> params);

    std::size_t dimension() const { return params_.size(); }
    const ParameterSpec& operator[](std::size_t i) const { return params_.at(i); }
    const std::vector<ParameterSpec>& params() const { return params_; }

    std::vector<double> values(const GridPoint& p) const;
    GridPoint snap(std::span<const double> values) const;
    GridPoint clamp(GridPoint p) const;
    bool contains(const GridPoint& p) const;

    /// True when every value lies inside the bounds and on its grid (to 1e-9 of a step).
    bool on_grid(std::span<const double> values) const;

    GridPoint random_point(std::mt19937_64& rng) const;

  private:
    std::vector<ParameterSpec> params_;
};

/// Objective over physical parameter values (lower is better).
using Objective = std::function<double(std::span<const double>)>;

/// Best point reported by an optimizer run.
struct SolutionRecord {
    GridPoint point;
    std::vector<double> values;
    double obfn = 0.0;
    std::int64_t evals_at_best = 0;  // counter value when the best was found
    std::int64_t total_evals = 0;    // objective invocations over the whole run
};

}  // namespace hydro::opt
