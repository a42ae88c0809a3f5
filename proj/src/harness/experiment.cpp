#include "hydro/harness/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include "hydro/circuits/fault.hpp"
#include "json.hpp"

namespace hydro::harness {

using circuits::DomainError;
using nlohmann::json;

CircuitId parse_circuit(const std::string& s) {
    if (s == "a" || s == "A") return CircuitId::A;
    if (s == "b" || s == "B") return CircuitId::B;
    throw DomainError("unknown circuit '" + s + "' (expected a or b)");
}

MethodId parse_method(const std::string& s) {
    if (s == "tabu") return MethodId::Tabu;
    if (s == "pga") return MethodId::Pga;
    throw DomainError("unknown method '" + s + "' (expected tabu or pga)");
}

const char* to_string(CircuitId c) { return c == CircuitId::A ? "a" : "b"; }
const char* to_string(MethodId m) { return m == MethodId::Tabu ? "tabu" : "pga"; }

void ExperimentSpec::validate() const {
    if (runs < 1) throw DomainError("runs must be >= 1");
    if (jobs < 1) throw DomainError("jobs must be >= 1");
    tabu.validate();
    pga.validate();
    objective_a.validate();
    objective_b.validate();
    integrator.validate();
}

namespace {

void check_keys(const json& section, const char* name, const std::set<std::string>& known) {
    if (!section.is_object()) throw DomainError(std::string("override section '") + name + "' must be an object");
    for (const auto& [key, _] : section.items()) {
        if (!known.count(key)) throw DomainError(std::string("unknown override '") + name + "." + key + "'");
    }
}

template <typename T>
void take(const json& section, const char* key, T& field) {
    if (section.contains(key)) field = section.at(key).get<T>();
}

}  // namespace

void apply_overrides(ExperimentSpec& spec, const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed config JSON: ") + e.what());
    }
    check_keys(j, "config", {"tabu", "pga", "integrator", "objective"});
    try {
        if (j.contains("tabu")) {
            const auto& t = j["tabu"];
            check_keys(t, "tabu",
                       {"tabu_size", "intermediate_size", "pattern_factor", "initial_step", "step_reduction", "min_step",
                        "stall_before_reduce", "stall_before_diversify", "max_evals"});
            auto& c = spec.tabu;
            take(t, "tabu_size", c.tabu_size);
            take(t, "intermediate_size", c.intermediate_size);
            take(t, "pattern_factor", c.pattern_factor);
            take(t, "initial_step", c.initial_step);
            take(t, "step_reduction", c.step_reduction);
            take(t, "min_step", c.min_step);
            take(t, "stall_before_reduce", c.stall_before_reduce);
            take(t, "stall_before_diversify", c.stall_before_diversify);
            take(t, "max_evals", c.max_evals);
        }
        if (j.contains("pga")) {
            const auto& p = j["pga"];
            check_keys(p, "pga",
                       {"subpop_count", "subpop_size", "generations", "migration_interval", "migrant_count",
                        "bits_per_param", "pc_per_island", "pm_per_island", "elitism", "point_cache", "polish"});
            auto& c = spec.pga;
            take(p, "subpop_count", c.subpop_count);
            take(p, "subpop_size", c.subpop_size);
            take(p, "generations", c.generations);
            take(p, "migration_interval", c.migration_interval);
            take(p, "migrant_count", c.migrant_count);
            take(p, "bits_per_param", c.bits_per_param);
            take(p, "elitism", c.elitism);
            take(p, "point_cache", c.point_cache);
            c.pc_per_island = opt::PGAConfig::default_crossover_rates(c.subpop_count);
            c.pm_per_island = opt::PGAConfig::default_mutation_rates(c.subpop_count);
            take(p, "pc_per_island", c.pc_per_island);
            take(p, "pm_per_island", c.pm_per_island);
            if (p.contains("polish")) {
                const auto& h = p["polish"];
                check_keys(h, "pga.polish", {"initial_units", "reduction", "min_units", "pattern_factor", "max_evals"});
                take(h, "initial_units", c.polish.initial_units);
                take(h, "reduction", c.polish.reduction);
                take(h, "min_units", c.polish.min_units);
                take(h, "pattern_factor", c.polish.pattern_factor);
                take(h, "max_evals", c.polish.max_evals);
            }
        }
        if (j.contains("integrator")) {
            const auto& i = j["integrator"];
            check_keys(i, "integrator", {"method", "dt", "duration", "sample_every"});
            auto& c = spec.integrator;
            if (i.contains("method")) {
                const auto m = i["method"].get<std::string>();
                if (m == "rk4") {
                    c.method = sim::Method::Rk4;
                } else if (m == "euler") {
                    c.method = sim::Method::Euler;
                } else {
                    throw DomainError("integrator.method must be rk4 or euler");
                }
            }
            take(i, "dt", c.dt);
            take(i, "duration", c.duration);
            take(i, "sample_every", c.sample_every);
        }
        if (j.contains("objective")) {
            const auto& o = j["objective"];
            check_keys(o, "objective", {"desired_speed", "pump_upper_bound"});
            take(o, "desired_speed", spec.objective_a.desired_speed);
            take(o, "desired_speed", spec.objective_b.desired_speed);
            take(o, "pump_upper_bound", spec.objective_a.pump_upper_bound);
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("invalid config value: ") + e.what());
    }
    spec.validate();
}

const Summary& StatsTable::at(const std::string& name) const {
    for (const auto& c : columns) {
        if (c.name == name) return c.summary;
    }
    throw std::out_of_range("no stats column '" + name + "'");
}

std::vector<std::string> point_columns(CircuitId c) {
    if (c == CircuitId::A) return {"pump_disp_cc", "motor_disp_cc", "pipe_diameter_mm"};
    return {"pump1_disp_cc", "pm1_speed_rpm", "pump2_disp_cc", "pm2_speed_rpm"};
}

StatsTable tabulate(CircuitId c, const std::vector<RunRecord>& runs) {
    StatsTable t;
    if (runs.empty()) return t;
    auto column = [&](const std::string& name, auto get) {
        std::vector<double> v;
        for (const auto& r : runs) v.push_back(get(r));
        t.columns.push_back({name, summarize(v)});
    };
    const auto names = point_columns(c);
    for (std::size_t i = 0; i < names.size(); ++i) column(names[i], [i](const RunRecord& r) { return r.point.at(i); });
    column("obfn", [](const RunRecord& r) { return r.obfn; });
    column("evals", [](const RunRecord& r) { return static_cast<double>(r.evals); });
    column("speed_rpm", [](const RunRecord& r) { return r.speed_rpm; });
    return t;
}

namespace {

struct Prepared {
    opt::Objective objective;
    const opt::ParameterSpace* space = nullptr;
    circuits::CalibrationRecord cal;
};

Prepared prepare(const ExperimentSpec& spec) {
    Prepared p;
    const auto integ = circuits::terminal_only(spec.integrator);
    if (spec.circuit == CircuitId::A) {
        p.cal = spec.calibration.value_or(circuits::CalibrationRecord{});
        p.objective = circuits::make_objective_a(p.cal, spec.objective_a, integ);
        p.space = &circuits::design_space_a();
    } else {
        p.cal = spec.calibration ? *spec.calibration : circuits::load_calibration(spec.calibration_path);
        const circuits::FaultConfig fault{spec.fault, p.cal.target_volumetric_eff};
        p.objective = circuits::make_objective_b(p.cal, fault, spec.objective_b, integ);
        p.space = &circuits::design_space_b();
    }
    return p;
}

double terminal_speed(const ExperimentSpec& spec, const Prepared& p, const std::vector<double>& point) {
    const auto integ = circuits::terminal_only(spec.integrator);
    try {
        if (spec.circuit == CircuitId::A) {
            return sim::integrate(circuits::build_circuit_a(circuits::design_a_from(point), p.cal), integ)
                .terminal.motor_speed_rpm;
        }
        const circuits::FaultConfig fault{spec.fault, p.cal.target_volumetric_eff};
        return sim::integrate(circuits::build_circuit_b(circuits::design_b_from(point), fault, p.cal), integ)
            .terminal.motor_speed_rpm;
    } catch (const sim::DivergedSimulation&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

RunRecord single_run(const ExperimentSpec& spec, const Prepared& p, std::size_t index) {
    RunRecord r;
    r.run_index = index;
    r.seed = spec.base_seed + index;
    const auto t0 = std::chrono::steady_clock::now();
    const opt::SolutionRecord best = spec.method == MethodId::Tabu
                                         ? opt::tabu_search(p.objective, *p.space, spec.tabu, r.seed)
                                         : opt::pga_run(p.objective, *p.space, spec.pga, r.seed);
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.point = best.values;
    r.obfn = best.obfn;
    r.evals = best.total_evals;
    r.evals_at_best = best.evals_at_best;
    r.speed_rpm = terminal_speed(spec, p, r.point);
    return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Prepared p = prepare(spec);

    ExperimentResult result;
    result.runs.resize(spec.runs);
    const unsigned workers = std::min<unsigned>(spec.jobs, static_cast<unsigned>(spec.runs));
    if (workers <= 1) {
        for (std::size_t i = 0; i < spec.runs; ++i) result.runs[i] = single_run(spec, p, i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < spec.runs; i = next++) {
                    try {
                        result.runs[i] = single_run(spec, p, i);
                    } catch (...) {
                        const std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }
    result.stats = tabulate(spec.circuit, result.runs);
    return result;
}

namespace {

void field(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    out << buf;
}

}  // namespace

void write_runs_csv(std::ostream& out, CircuitId c, const ExperimentResult& r) {
    const auto names = point_columns(c);
    out << "run";
    for (const auto& n : names) out << ',' << n;
    out << ",obfn,evals,speed_rpm\n";
    for (const auto& run : r.runs) {
        out << run.run_index;
        for (double v : run.point) {
            out << ',';
            field(out, v);
        }
        out << ',';
        field(out, run.obfn);
        out << ',' << run.evals << ',';
        field(out, run.speed_rpm);
        out << '\n';
    }
    for (const bool sd_row : {false, true}) {
        out << (sd_row ? "sd" : "avg");
        for (const auto& col : r.stats.columns) {
            out << ',';
            if (!sd_row) {
                field(out, col.summary.mean);
            } else if (col.summary.sd) {
                field(out, *col.summary.sd);
            }
        }
        out << '\n';
    }
}

void write_runs_csv(const std::string& path, CircuitId c, const ExperimentResult& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_runs_csv(out, c, r);
    if (!out) throw std::runtime_error("failed writing " + path);
}

circuits::CalibrationRecord calibrate(double target_eff, const std::string& out_path,
                                      const circuits::CalibrationRecord& base) {
    const auto cal = circuits::calibrate_record(base, target_eff);
    circuits::save_calibration(cal, out_path);
    return cal;
}

}  // namespace hydro::harness
