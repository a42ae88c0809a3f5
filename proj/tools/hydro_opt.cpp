#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hydro/circuits/fault.hpp"
#include "hydro/harness/experiment.hpp"
#include "hydro/harness/export.hpp"

using namespace hydro;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw circuits::DomainError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_stats(const harness::ExperimentResult& r) {
    std::printf("%-18s %14s %14s\n", "column", "avg", "sd");
    for (const auto& c : r.stats.columns) {
        if (c.summary.sd) {
            std::printf("%-18s %14.6g %14.6g\n", c.name.c_str(), c.summary.mean, *c.summary.sd);
        } else {
            std::printf("%-18s %14.6g %14s\n", c.name.c_str(), c.summary.mean, "-");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation-based sizing of hydrostatic transmissions"};
    app.require_subcommand(1);

    auto* cal_cmd = app.add_subcommand("calibrate", "Solve the faulty and nominal motor slip for circuit B");
    double target_eff = 0.75;
    std::string cal_out = "calibration.json";
    cal_cmd->add_option("--target-eff", target_eff, "Faulty motor volumetric efficiency")->check(CLI::Range(0.0, 1.0));
    cal_cmd->add_option("--out", cal_out, "Calibration file to write");

    auto* run_cmd = app.add_subcommand("run", "Run a batch of optimizations");
    std::string circuit = "a";
    std::string method = "tabu";
    std::size_t runs = 10;
    std::uint64_t seed = 42;
    std::string runs_out;
    std::string cal_path = "calibration.json";
    std::string config_path;
    bool no_fault = false;
    unsigned jobs = 1;
    run_cmd->add_option("--circuit", circuit, "a or b")->check(CLI::IsMember({"a", "b"}));
    run_cmd->add_option("--method", method, "tabu or pga")->check(CLI::IsMember({"tabu", "pga"}));
    run_cmd->add_option("--runs", runs, "Number of runs")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "Seed of run 0; run i uses seed + i");
    run_cmd->add_option("--out", runs_out, "Runs CSV");
    run_cmd->add_option("--calibration", cal_path, "Calibration file (circuit B)");
    run_cmd->add_option("--config", config_path, "JSON overrides for tabu/pga/integrator/objective");
    run_cmd->add_flag("--no-fault", no_fault, "Circuit B with the nominal motor");
    run_cmd->add_option("--jobs", jobs, "Runs executed concurrently")->check(CLI::PositiveNumber);

    auto* sim_cmd = app.add_subcommand("simulate", "Simulate one design point and export its time series");
    std::string point;
    std::string trace_out;
    sim_cmd->add_option("--circuit", circuit, "a or b")->check(CLI::IsMember({"a", "b"}));
    sim_cmd->add_option("--point", point, "Comma-separated design values")->required();
    sim_cmd->add_option("--out", trace_out, "Time-series CSV");
    sim_cmd->add_option("--calibration", cal_path, "Calibration file (circuit B)");
    sim_cmd->add_flag("--no-fault", no_fault, "Circuit B with the nominal motor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (cal_cmd->parsed()) {
            const auto cal = harness::calibrate(target_eff, cal_out);
            std::printf("faulty motor slip  %.6g (L/min)/bar\n", *cal.motor_b_slip_faulty);
            std::printf("nominal motor slip %.6g (L/min)/bar\n", *cal.motor_b_slip_nominal);
            std::printf("wrote %s\n", cal_out.c_str());
        } else if (run_cmd->parsed()) {
            harness::ExperimentSpec spec;
            spec.circuit = harness::parse_circuit(circuit);
            spec.method = harness::parse_method(method);
            spec.runs = runs;
            spec.base_seed = seed;
            spec.fault = !no_fault;
            spec.calibration_path = cal_path;
            spec.jobs = jobs;
            if (!config_path.empty()) harness::apply_overrides(spec, read_file(config_path));
            const auto result = harness::run_experiment(spec);
            if (!runs_out.empty()) {
                harness::write_runs_csv(runs_out, spec.circuit, result);
            } else {
                harness::write_runs_csv(std::cout, spec.circuit, result);
            }
            print_stats(result);
        } else if (sim_cmd->parsed()) {
            const auto values = circuits::parse_point(point);
            sim::SimulationResult r;
            if (harness::parse_circuit(circuit) == harness::CircuitId::A) {
                r = harness::simulate_a(values, circuits::CalibrationRecord{});
            } else {
                r = harness::simulate_b(values, !no_fault, circuits::load_calibration(cal_path));
            }
            if (!trace_out.empty()) {
                harness::export_timeseries(r, trace_out);
            } else {
                harness::export_timeseries(r, std::cout);
            }
            const auto& m = r.terminal;
            std::fprintf(stderr, "terminal speed %.4g rpm, supply %.4g bar, volumetric efficiency %.4g\n",
                         m.motor_speed_rpm, m.supply_pressure_bar, m.motor_volumetric_eff);
        }
    } catch (const circuits::CalibrationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeError;
    } catch (const circuits::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeError;
    }
    return 0;
}
