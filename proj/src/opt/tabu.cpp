#include "hydro/opt/tabu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hydro::opt {

void TabuConfig::validate() const {
    if (tabu_size < 1 || intermediate_size < 1) throw std::invalid_argument("tabu and intermediate sizes must be >= 1");
    if (!(step_reduction > 0.0 && step_reduction < 1.0)) throw std::invalid_argument("step_reduction must lie in (0, 1)");
    if (!(min_step > 0.0 && min_step < initial_step)) throw std::invalid_argument("need 0 < min_step < initial_step");
    if (!(initial_step <= 1.0)) throw std::invalid_argument("initial_step is a fraction of the range (<= 1)");
    if (!(pattern_factor > 0.0)) throw std::invalid_argument("pattern_factor must be > 0");
    if (stall_before_reduce < 1 || stall_before_diversify < 1) throw std::invalid_argument("stall counts must be >= 1");
    if (max_evals < 1) throw std::invalid_argument("max_evals must be >= 1");
}

std::vector<ScoredPoint> TabuState::intermediate_by_obfn() const {
    std::vector<ScoredPoint> v(intermediate.begin(), intermediate.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.obfn < b.obfn; });
    return v;
}

TabuState make_state(const TabuConfig& cfg, const ParameterSpace& space) {
    TabuState s;
    s.step.assign(space.dimension(), cfg.initial_step);
    s.tabu_capacity = cfg.tabu_size;
    s.intermediate_capacity = cfg.intermediate_size;
    return s;
}

bool is_tabu(const GridPoint& p, const TabuState& s) {
    return std::any_of(s.tabu_list.begin(), s.tabu_list.end(), [&](const auto& e) { return e.point == p; });
}

std::optional<double> remembered(const GridPoint& p, const TabuState& s) {
    for (const auto* list : {&s.tabu_list, &s.intermediate}) {
        for (const auto& e : *list) {
            if (e.point == p) return e.obfn;
        }
    }
    return std::nullopt;
}

void record_accepted(const GridPoint& p, double obfn, TabuState& s) {
    s.tabu_list.push_back({p, obfn});
    while (s.tabu_list.size() > s.tabu_capacity) s.tabu_list.pop_front();
}

bool update_intermediate(const GridPoint& p, double obfn, TabuState& s) {
    if (!s.intermediate.empty() && !(obfn < s.intermediate.back().obfn)) return false;
    s.intermediate.push_back({p, obfn});
    while (s.intermediate.size() > s.intermediate_capacity) s.intermediate.pop_front();
    return true;
}

double Evaluator::operator()(const GridPoint& p, TabuState& s) {
    if (is_tabu(p, s)) throw std::logic_error("attempted to evaluate a tabu point");
    if (observer_) observer_->on_evaluate(s, p);
    const auto v = space_.values(p);
    ++s.evals;
    return f_(v);
}

double Evaluator::value_of(const GridPoint& p, TabuState& s) {
    if (auto known = remembered(p, s)) return *known;
    return (*this)(p, s);
}

std::vector<std::int64_t> move_units(const ParameterSpace& space, const std::vector<double>& step) {
    std::vector<std::int64_t> m(space.dimension());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double units = step[i] * static_cast<double>(space[i].levels());
        m[i] = std::max<std::int64_t>(1, std::llround(units));
    }
    return m;
}

std::optional<ScoredPoint> explore(TabuState& s, const ParameterSpace& space, Evaluator& eval) {
    const auto moves = move_units(space, s.step);
    std::optional<ScoredPoint> best;
    std::vector<GridPoint> seen;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        for (const std::int64_t dir : {-1, 1}) {
            GridPoint c = s.base;
            c[i] += dir * moves[i];
            c = space.clamp(std::move(c));
            if (c == s.base || is_tabu(c, s)) continue;
            if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
            seen.push_back(c);
            const double v = eval.value_of(c, s);
            if (!best || v < best->obfn) best = ScoredPoint{c, v};
        }
    }
    return best;
}

GridPoint pattern_move(const ParameterSpace& space, const GridPoint& old_base, const GridPoint& new_base, double k) {
    GridPoint p(new_base.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = static_cast<double>(new_base[i] - old_base[i]);
        p[i] = new_base[i] + std::llround(k * d);
    }
    return space.clamp(std::move(p));
}

GridPoint diversify(const TabuState& s, const ParameterSpace& space, std::mt19937_64& rng) {
    if (s.intermediate.empty()) return space.random_point(rng);
    std::uniform_int_distribution<std::size_t> pick(0, s.intermediate.size() - 1);
    GridPoint p(space.dimension());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = s.intermediate[pick(rng)].point[i];
    return p;
}

namespace {

class Search {
  public:
    Search(const Objective& f, const ParameterSpace& space, const TabuConfig& cfg, std::uint64_t seed,
           TabuObserver* observer)
        : space_(space), cfg_(cfg), rng_(seed), eval_(f, space, observer), observer_(observer),
          s_(make_state(cfg, space)) {}

    SolutionRecord run() {
        const GridPoint start = space_.random_point(rng_);
        accept(start, eval_(start, s_));

        // Hard cap so degenerate spaces (everything tabu) cannot spin forever.
        const std::int64_t max_iterations = 100 * cfg_.max_evals + 1000;
        for (std::int64_t it = 0; it < max_iterations && !finished(); ++it) {
            auto c = explore(s_, space_, eval_);
            if (!c) {
                restart();
                continue;
            }
            if (c->obfn < s_.base_obfn) {
                const GridPoint p = pattern_move(space_, s_.base, c->point, cfg_.pattern_factor);
                if (p != c->point && !is_tabu(p, s_)) {
                    const double vp = eval_.value_of(p, s_);
                    if (vp < c->obfn) c = ScoredPoint{p, vp};
                }
            }
            if (accept(c->point, c->obfn)) {
                stalls_ = 0;
                reductions_without_best_ = 0;
                continue;
            }
            if (++stalls_ < cfg_.stall_before_reduce) continue;
            stalls_ = 0;
            for (auto& st : s_.step) st *= cfg_.step_reduction;
            if (++reductions_without_best_ >= cfg_.stall_before_diversify) {
                restart();
            } else {
                // The finer step searches around the best point found so far.
                s_.base = s_.best->point;
                s_.base_obfn = s_.best->obfn;
            }
        }

        SolutionRecord r;
        r.point = s_.best->point;
        r.values = space_.values(r.point);
        r.obfn = s_.best->obfn;
        r.evals_at_best = s_.evals_at_best;
        r.total_evals = s_.evals;
        return r;
    }

  private:
    // Makes p the base; returns true on a new overall best.
    bool accept(const GridPoint& p, double v) {
        s_.base = p;
        s_.base_obfn = v;
        record_accepted(p, v, s_);
        const bool improved = !s_.best || v < s_.best->obfn;
        if (improved) {
            s_.best = ScoredPoint{p, v};
            s_.evals_at_best = s_.evals;
            update_intermediate(p, v, s_);
        }
        if (observer_) observer_->on_accept(s_);
        return improved;
    }

    void restart() {
        const GridPoint d = diversify(s_, space_, rng_);
        if (observer_) observer_->on_diversify(s_, d);
        if (!diversified_) {
            s_.step.assign(space_.dimension(), cfg_.initial_step);
            diversified_ = true;
        }
        stalls_ = 0;
        reductions_without_best_ = 0;
        accept(d, eval_.value_of(d, s_));
    }

    bool finished() const {
        if (s_.evals >= cfg_.max_evals) return true;
        for (std::size_t i = 0; i < space_.dimension(); ++i) {
            const double units = s_.step[i] * static_cast<double>(space_[i].levels());
            // Steps that still round to a whole grid unit have not been exhausted.
            if (s_.step[i] >= cfg_.min_step || units >= 0.5) return false;
        }
        return true;
    }

    const ParameterSpace& space_;
    const TabuConfig& cfg_;
    std::mt19937_64 rng_;
    Evaluator eval_;
    TabuObserver* observer_;
    TabuState s_;
    int stalls_ = 0;
    int reductions_without_best_ = 0;
    bool diversified_ = false;
};

}  // namespace

SolutionRecord tabu_search(const Objective& f, const ParameterSpace& space, const TabuConfig& cfg,
                           std::uint64_t seed, TabuObserver* observer) {
    cfg.validate();
    if (space.dimension() == 0) throw std::invalid_argument("empty parameter space");
    return Search(f, space, cfg, seed, observer).run();
}

SolutionRecord hooke_jeeves(const Objective& f, const ParameterSpace& space, const GridPoint& start, double start_obfn,
                            const HookeJeevesConfig& cfg) {
    if (!space.contains(start)) throw std::invalid_argument("start point outside the parameter space");
    std::map<GridPoint, double> cache{{start, start_obfn}};
    std::int64_t evals = 0;
    std::int64_t evals_at_best = 0;
    auto value = [&](const GridPoint& p) {
        if (auto it = cache.find(p); it != cache.end()) return it->second;
        ++evals;
        const double v = f(space.values(p));
        cache.emplace(p, v);
        return v;
    };

    GridPoint base = start;
    double base_v = start_obfn;
    double units = cfg.initial_units;
    while (units >= cfg.min_units && evals < cfg.max_evals) {
        const auto mv = std::max<std::int64_t>(1, std::llround(units));
        GridPoint best = base;
        double best_v = base_v;
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            for (const std::int64_t dir : {-1, 1}) {
                GridPoint c = base;
                c[i] += dir * mv;
                c = space.clamp(std::move(c));
                const double v = value(c);
                if (v < best_v) {
                    best = std::move(c);
                    best_v = v;
                }
            }
        }
        if (!(best_v < base_v)) {
            units *= cfg.reduction;
            continue;
        }
        const GridPoint p = pattern_move(space, base, best, cfg.pattern_factor);
        const double vp = value(p);
        if (vp < best_v) {
            best = p;
            best_v = vp;
        }
        base = std::move(best);
        base_v = best_v;
        evals_at_best = evals;
    }

    SolutionRecord r;
    r.point = base;
    r.values = space.values(base);
    r.obfn = base_v;
    r.evals_at_best = evals_at_best;
    r.total_evals = evals;
    return r;
}

}  // namespace hydro::opt
