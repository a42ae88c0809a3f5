#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "hydro/opt/space.hpp"

namespace hydro::opt {

struct TabuConfig {
    std::size_t tabu_size = 8;
    std::size_t intermediate_size = 6;
    double pattern_factor = 1.0;
    double initial_step = 0.1;  // fraction of each parameter range
    double step_reduction = 0.5;
    double min_step = 0.005;    // fraction of each parameter range
    int stall_before_reduce = 3;
    int stall_before_diversify = 2;  // reductions without a new best
    std::int64_t max_evals = 2000;

    void validate() const;
};

struct ScoredPoint {
    GridPoint point;
    double obfn = 0.0;
};

struct TabuState {
    GridPoint base;
    double base_obfn = 0.0;
    std::deque<ScoredPoint> tabu_list;     // oldest at the front
    std::deque<ScoredPoint> intermediate;  // oldest at the front; values strictly decrease
    std::vector<double> step;              // fraction of range, per parameter
    std::int64_t evals = 0;
    std::optional<ScoredPoint> best;
    std::int64_t evals_at_best = 0;
    std::size_t tabu_capacity = 8;
    std::size_t intermediate_capacity = 6;

    /// Intermediate memory ordered best first.
    std::vector<ScoredPoint> intermediate_by_obfn() const;
};

TabuState make_state(const TabuConfig& cfg, const ParameterSpace& space);

bool is_tabu(const GridPoint& p, const TabuState& s);
/// Known value of p if it sits in the tabu list or intermediate memory.
std::optional<double> remembered(const GridPoint& p, const TabuState& s);

void record_accepted(const GridPoint& p, double obfn, TabuState& s);
/// Inserts only a new best; returns true when inserted.
bool update_intermediate(const GridPoint& p, double obfn, TabuState& s);

/// Optional hooks for tests and tracing.
struct TabuObserver {
    virtual ~TabuObserver() = default;
    virtual void on_evaluate(const TabuState&, const GridPoint&) {}
    virtual void on_accept(const TabuState&) {}
    virtual void on_diversify(const TabuState&, const GridPoint&) {}
};

/// Counts objective calls and refuses to evaluate points on the tabu list.
class Evaluator {
  public:
    Evaluator(const Objective& f, const ParameterSpace& space, TabuObserver* observer = nullptr)
        : f_(f), space_(space), observer_(observer) {}

    double operator()(const GridPoint& p, TabuState& s);
    /// Value from memory when available, otherwise an evaluation.
    double value_of(const GridPoint& p, TabuState& s);

  private:
    const Objective& f_;
    const ParameterSpace& space_;
    TabuObserver* observer_;
};

/// Grid units moved per coordinate for the current step (at least one).
std::vector<std::int64_t> move_units(const ParameterSpace& space, const std::vector<double>& step);

/// Best non-tabu +-step neighbour of the base, uphill moves included.
/// Empty when every neighbour is tabu or outside the bounds.
std::optional<ScoredPoint> explore(TabuState& s, const ParameterSpace& space, Evaluator& eval);

GridPoint pattern_move(const ParameterSpace& space, const GridPoint& old_base, const GridPoint& new_base, double k);

/// Each coordinate drawn uniformly from that coordinate of the intermediate
/// entries; a uniform random point when memory is empty.
GridPoint diversify(const TabuState& s, const ParameterSpace& space, std::mt19937_64& rng);

SolutionRecord tabu_search(const Objective& f, const ParameterSpace& space, const TabuConfig& cfg,
                           std::uint64_t seed, TabuObserver* observer = nullptr);

struct HookeJeevesConfig {
    double initial_units = 2.0;
    double reduction = 0.5;
    double min_units = 1.0;
    double pattern_factor = 1.0;
    std::int64_t max_evals = 1000;
};

/// Improving-moves-only pattern search from a point of known value.
SolutionRecord hooke_jeeves(const Objective& f, const ParameterSpace& space, const GridPoint& start, double start_obfn,
                            const HookeJeevesConfig& cfg = {});

}  // namespace hydro::opt
