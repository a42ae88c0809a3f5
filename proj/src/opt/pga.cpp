#include "hydro/opt/pga.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace hydro::opt {

void PGAConfig::validate() const {
    if (subpop_count < 1 || subpop_size < 2) throw std::invalid_argument("need >= 1 island of >= 2 members");
    if (migration_interval < 1) throw std::invalid_argument("migration_interval must be >= 1");
    if (migrant_count >= subpop_size) throw std::invalid_argument("migrant_count must be < subpop_size");
    if (bits_per_param < 1 || bits_per_param > 62) throw std::invalid_argument("bits_per_param must lie in [1, 62]");
    if (elitism >= subpop_size) throw std::invalid_argument("elitism must be < subpop_size");
    if (pc_per_island.size() != subpop_count || pm_per_island.size() != subpop_count) {
        throw std::invalid_argument("need one crossover and one mutation rate per island");
    }
    for (double p : pc_per_island) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("crossover rates must lie in [0, 1]");
    }
    for (double p : pm_per_island) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mutation rates must lie in [0, 1]");
    }
}

std::vector<double> PGAConfig::default_crossover_rates(std::size_t islands) {
    std::vector<double> v(islands, 0.6);
    for (std::size_t i = 1; i < islands; ++i) v[i] = 0.6 + 0.35 * static_cast<double>(i) / static_cast<double>(islands - 1);
    return v;
}

std::vector<double> PGAConfig::default_mutation_rates(std::size_t islands) {
    std::vector<double> v(islands, 0.001);
    for (std::size_t i = 1; i < islands; ++i) {
        v[i] = 0.001 * std::pow(50.0, static_cast<double>(i) / static_cast<double>(islands - 1));
    }
    return v;
}

std::uint64_t field_value(const Genome& g, std::size_t param, std::size_t bits_per_param) {
    std::uint64_t x = 0;
    for (std::size_t b = 0; b < bits_per_param; ++b) x = (x << 1) | (g[param * bits_per_param + b] & 1u);
    return x;
}

GridPoint decode(const Genome& g, const ParameterSpace& space, std::size_t bits_per_param) {
    if (g.size() != space.dimension() * bits_per_param) throw std::invalid_argument("genome length mismatch");
    const double full = std::ldexp(1.0, static_cast<int>(bits_per_param)) - 1.0;
    GridPoint p(space.dimension());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& spec = space[i];
        const double frac = static_cast<double>(field_value(g, i, bits_per_param)) / full;
        p[i] = spec.snap(spec.lower + frac * (spec.upper - spec.lower));
    }
    return p;
}

Genome random_genome(std::size_t length, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    Genome g(length);
    for (auto& b : g) b = coin(rng) ? 1 : 0;
    return g;
}

const Individual& select_parent(const Subpopulation& sub, std::mt19937_64& rng) {
    if (sub.members.empty()) throw std::invalid_argument("cannot select from an empty subpopulation");
    std::uniform_int_distribution<std::size_t> pick(0, sub.members.size() - 1);
    const Individual& a = sub.members[pick(rng)];
    const Individual& b = sub.members[pick(rng)];
    return b.obfn < a.obfn ? b : a;
}

std::pair<Genome, Genome> crossover_at(const Genome& a, const Genome& b, std::size_t cut) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
    Genome c = a;
    Genome d = b;
    std::swap_ranges(c.begin() + static_cast<std::ptrdiff_t>(cut), c.end(), d.begin() + static_cast<std::ptrdiff_t>(cut));
    return {std::move(c), std::move(d)};
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double pc, std::mt19937_64& rng) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
    if (a.size() < 2 || !std::bernoulli_distribution(pc)(rng)) return {a, b};
    std::uniform_int_distribution<std::size_t> cut(1, a.size() - 1);
    return crossover_at(a, b, cut(rng));
}

Genome mutate(Genome g, double pm, std::mt19937_64& rng) {
    std::bernoulli_distribution flip(pm);
    for (auto& b : g) {
        if (flip(rng)) b ^= 1u;
    }
    return g;
}

namespace {

// Member indices ordered best first; ties keep their positions.
std::vector<std::size_t> ranking(const Subpopulation& sub) {
    std::vector<std::size_t> idx(sub.members.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return sub.members[a].obfn < sub.members[b].obfn; });
    return idx;
}

}  // namespace

void migrate(std::vector<Subpopulation>& islands, std::size_t count) {
    const std::size_t n = islands.size();
    if (n < 2 || count == 0) return;
    std::vector<std::vector<Individual>> outgoing(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto order = ranking(islands[i]);
        if (count > order.size()) throw std::invalid_argument("more migrants than members");
        for (std::size_t k = 0; k < count; ++k) outgoing[i].push_back(islands[i].members[order[k]]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& dest = islands[(i + 1) % n];
        const auto order = ranking(dest);
        for (std::size_t k = 0; k < count; ++k) dest.members[order[order.size() - 1 - k]] = outgoing[i][k];
    }
}

namespace {

class Run {
  public:
    Run(const Objective& f, const ParameterSpace& space, const PGAConfig& cfg, std::uint64_t seed)
        : f_(f), space_(space), cfg_(cfg), rng_(seed) {}

    Individual make(Genome g) {
        Individual ind;
        ind.point = decode(g, space_, cfg_.bits_per_param);
        ind.genome = std::move(g);
        ind.obfn = value(ind.point);
        return ind;
    }

    void note(const Individual& ind) {
        if (!best_ || ind.obfn < best_->obfn) {
            best_ = ind;
            evals_at_best_ = evals_;
        }
    }

    PGAResult run(PGAObserver* observer) {
        const std::size_t len = space_.dimension() * cfg_.bits_per_param;
        std::vector<Subpopulation> islands(cfg_.subpop_count);
        for (std::size_t i = 0; i < islands.size(); ++i) {
            islands[i].island_index = i;
            for (std::size_t k = 0; k < cfg_.subpop_size; ++k) {
                islands[i].members.push_back(make(random_genome(len, rng_)));
                note(islands[i].members.back());
            }
        }

        for (std::size_t gen = 1; gen <= cfg_.generations; ++gen) {
            for (auto& island : islands) evolve(island);
            if (observer) observer->on_generation(gen, islands);
            if (gen % cfg_.migration_interval == 0) {
                if (observer) {
                    const auto before = islands;
                    migrate(islands, cfg_.migrant_count);
                    observer->on_migration(before, islands);
                } else {
                    migrate(islands, cfg_.migrant_count);
                }
            }
        }

        PGAResult r;
        r.ga_evals = evals_;
        r.ga_best.point = best_->point;
        r.ga_best.values = space_.values(best_->point);
        r.ga_best.obfn = best_->obfn;
        r.ga_best.evals_at_best = evals_at_best_;
        r.ga_best.total_evals = evals_;

        const SolutionRecord polished = hooke_jeeves(f_, space_, best_->point, best_->obfn, cfg_.polish);
        r.polish_evals = polished.total_evals;
        r.best = r.ga_best;
        r.best.total_evals = evals_ + polished.total_evals;
        if (polished.obfn < r.ga_best.obfn) {
            r.best.point = polished.point;
            r.best.values = polished.values;
            r.best.obfn = polished.obfn;
            r.best.evals_at_best = evals_ + polished.evals_at_best;
        }
        return r;
    }

  private:
    double value(const GridPoint& p) {
        if (cfg_.point_cache) {
            if (auto it = cache_.find(p); it != cache_.end()) return it->second;
        }
        ++evals_;
        const double v = f_(space_.values(p));
        if (cfg_.point_cache) cache_.emplace(p, v);
        return v;
    }

    void evolve(Subpopulation& island) {
        const double pc = cfg_.pc_per_island[island.island_index];
        const double pm = cfg_.pm_per_island[island.island_index];
        const auto order = ranking(island);

        std::vector<Individual> next;
        next.reserve(cfg_.subpop_size);
        for (std::size_t k = 0; k < cfg_.elitism; ++k) next.push_back(island.members[order[k]]);
        while (next.size() < cfg_.subpop_size) {
            const Genome& a = select_parent(island, rng_).genome;
            const Genome& b = select_parent(island, rng_).genome;
            auto [c, d] = crossover(a, b, pc, rng_);
            c = mutate(std::move(c), pm, rng_);
            d = mutate(std::move(d), pm, rng_);
            next.push_back(make(std::move(c)));
            note(next.back());
            if (next.size() < cfg_.subpop_size) {
                next.push_back(make(std::move(d)));
                note(next.back());
            }
        }
        island.members = std::move(next);
    }

    const Objective& f_;
    const ParameterSpace& space_;
    const PGAConfig& cfg_;
    std::mt19937_64 rng_;
    std::map<GridPoint, double> cache_;
    std::optional<Individual> best_;
    std::int64_t evals_ = 0;
    std::int64_t evals_at_best_ = 0;
};

}  // namespace

PGAResult pga_search(const Objective& f, const ParameterSpace& space, const PGAConfig& cfg, std::uint64_t seed,
                     PGAObserver* observer) {
    cfg.validate();
    if (space.dimension() == 0) throw std::invalid_argument("empty parameter space");
    return Run(f, space, cfg, seed).run(observer);
}

}  // namespace hydro::opt
