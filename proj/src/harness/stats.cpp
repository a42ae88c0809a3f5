#include "hydro/harness/stats.hpp"

#include <cmath>

#include "hydro/circuits/design.hpp"

namespace hydro::harness {

Summary summarize(std::span<const double> values) {
    if (values.empty()) throw circuits::DomainError("cannot summarize an empty list");
    Summary s;
    s.count = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    return s;
}

}  // namespace hydro::harness
