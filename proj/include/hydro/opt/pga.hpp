#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hydro/opt/space.hpp"
#include "hydro/opt/tabu.hpp"

namespace hydro::opt {

/// Bit string, one byte per bit (0 or 1), parameters MSB first.
using Genome = std::vector<std::uint8_t>;

struct Individual {
    Genome genome;
    GridPoint point;
    double obfn = 0.0;
};

struct Subpopulation {
    std::vector<Individual> members;
    std::size_t island_index = 0;
};

struct PGAConfig {
    std::size_t subpop_count = 8;
    std::size_t subpop_size = 20;
    std::size_t generations = 42;
    std::size_t migration_interval = 3;
    std::size_t migrant_count = 4;
    std::size_t bits_per_param = 10;
    std::vector<double> pc_per_island = default_crossover_rates(8);
    std::vector<double> pm_per_island = default_mutation_rates(8);
    std::size_t elitism = 1;
    /// Reuse the value of any point already evaluated in this run. Off by default:
    /// each new child is evaluated once, elites and migrants keep their value.
    bool point_cache = false;
    HookeJeevesConfig polish{};

    void validate() const;

    /// Linear 0.60 .. 0.95.
    static std::vector<double> default_crossover_rates(std::size_t islands);
    /// Log-spaced 0.001 .. 0.05.
    static std::vector<double> default_mutation_rates(std::size_t islands);
};

/// Parameter i reads bits [i*bits, (i+1)*bits) as an unsigned integer, maps it
/// linearly onto [lower, upper] and snaps to the grid.
GridPoint decode(const Genome& g, const ParameterSpace& space, std::size_t bits_per_param);
std::uint64_t field_value(const Genome& g, std::size_t param, std::size_t bits_per_param);
Genome random_genome(std::size_t length, std::mt19937_64& rng);

/// Tournament of two, drawn with replacement; lower obfn wins, ties to the first draw.
const Individual& select_parent(const Subpopulation& sub, std::mt19937_64& rng);

/// Single-point crossover with probability pc; cut uniform in [1, len-1].
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double pc, std::mt19937_64& rng);
std::pair<Genome, Genome> crossover_at(const Genome& a, const Genome& b, std::size_t cut);

Genome mutate(Genome g, double pm, std::mt19937_64& rng);

/// Ring exchange: island i sends copies of its best `count` to island i+1,
/// which drops its worst `count`. All senders are read before any island changes.
void migrate(std::vector<Subpopulation>& islands, std::size_t count);

struct PGAObserver {
    virtual ~PGAObserver() = default;
    /// After generation `gen` (1-based) is evaluated, before any migration.
    virtual void on_generation(std::size_t, const std::vector<Subpopulation>&) {}
    virtual void on_migration(const std::vector<Subpopulation>& /*before*/, const std::vector<Subpopulation>& /*after*/) {}
};

struct PGAResult {
    SolutionRecord best;
    std::int64_t ga_evals = 0;
    std::int64_t polish_evals = 0;
    SolutionRecord ga_best;  // before the polish
};

PGAResult pga_search(const Objective& f, const ParameterSpace& space, const PGAConfig& cfg, std::uint64_t seed,
                     PGAObserver* observer = nullptr);

inline SolutionRecord pga_run(const Objective& f, const ParameterSpace& space, const PGAConfig& cfg,
                              std::uint64_t seed) {
    return pga_search(f, space, cfg, seed).best;
}

}  // namespace hydro::opt
