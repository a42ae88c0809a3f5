#pragma once

#include <optional>
#include <span>

namespace hydro::harness {

struct Summary {
    double mean = 0.0;
    std::optional<double> sd;  // sample SD (n - 1); absent for a single value
    std::size_t count = 0;
};

/// Throws circuits::DomainError on an empty list.
Summary summarize(std::span<const double> values);

}  // namespace hydro::harness
