#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hydro/circuits/calibration.hpp"
#include "hydro/circuits/networks.hpp"
#include "hydro/circuits/objective.hpp"
#include "hydro/harness/stats.hpp"
#include "hydro/opt/pga.hpp"
#include "hydro/opt/tabu.hpp"
#include "hydro/sim/integrator.hpp"

namespace hydro::harness {

enum class CircuitId { A, B };
enum class MethodId { Tabu, Pga };

CircuitId parse_circuit(const std::string& s);
MethodId parse_method(const std::string& s);
const char* to_string(CircuitId c);
const char* to_string(MethodId m);

struct ExperimentSpec {
    CircuitId circuit = CircuitId::A;
    MethodId method = MethodId::Tabu;
    std::size_t runs = 10;
    std::uint64_t base_seed = 42;
    bool fault = true;  // circuit B only
    opt::TabuConfig tabu{};
    opt::PGAConfig pga{};
    circuits::ObjectiveConfigA objective_a{};
    circuits::ObjectiveConfigB objective_b{};
    sim::IntegratorConfig integrator = circuits::default_integrator();
    /// Used for circuit B when `calibration` is empty.
    std::string calibration_path = "calibration.json";
    std::optional<circuits::CalibrationRecord> calibration;
    unsigned jobs = 1;

    void validate() const;
};

/// Applies a JSON document of overrides: {"tabu": {...}, "pga": {...},
/// "integrator": {...}, "objective": {...}}. Unknown keys are rejected.
void apply_overrides(ExperimentSpec& spec, const std::string& json_text);

struct RunRecord {
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    std::vector<double> point;  // catalogue units
    double obfn = 0.0;
    std::int64_t evals = 0;
    std::int64_t evals_at_best = 0;
    double speed_rpm = 0.0;  // terminal motor speed of the best point
    double wall_time_s = 0.0;
};

struct ColumnStats {
    std::string name;
    Summary summary;
};

struct StatsTable {
    std::vector<ColumnStats> columns;
    const Summary& at(const std::string& name) const;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;  // ordered by run_index
    StatsTable stats;
};

std::vector<std::string> point_columns(CircuitId c);

/// Run i uses seed base_seed + i. Output does not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentSpec& spec);

StatsTable tabulate(CircuitId c, const std::vector<RunRecord>& runs);

/// Per-run rows followed by "avg" and "sd" rows. Wall time is left out so the
/// file is identical for identical specs.
void write_runs_csv(std::ostream& out, CircuitId c, const ExperimentResult& r);
void write_runs_csv(const std::string& path, CircuitId c, const ExperimentResult& r);

/// Solves both motor slips and writes the record to out_path.
circuits::CalibrationRecord calibrate(double target_eff, const std::string& out_path,
                                      const circuits::CalibrationRecord& base = {});

}  // namespace hydro::harness
