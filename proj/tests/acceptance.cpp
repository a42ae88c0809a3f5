// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <thread>

#include "hydro/circuits/fault.hpp"
#include "hydro/circuits/objective.hpp"
#include "hydro/harness/experiment.hpp"
#include "hydro/opt/pga.hpp"
#include "hydro/opt/tabu.hpp"

using namespace hydro;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

unsigned workers() { return std::max(1u, std::min(10u, std::thread::hardware_concurrency())); }

harness::ExperimentResult batch_a(harness::MethodId m) {
    harness::ExperimentSpec s;
    s.circuit = harness::CircuitId::A;
    s.method = m;
    s.jobs = workers();
    return harness::run_experiment(s);
}

void criteria_circuit_a() {
    const auto t0 = Clock::now();
    const auto tabu = batch_a(harness::MethodId::Tabu);
    const auto pga = batch_a(harness::MethodId::Pga);
    const double elapsed = seconds_since(t0);

    // 1: every good solution sits on the kinematic 5:1 ratio.
    int good = 0;
    std::string offenders;
    for (const auto* batch : {&tabu, &pga}) {
        for (const auto& r : batch->runs) {
            if (!(r.obfn < 0.01)) continue;
            ++good;
            const double ratio = r.point[1] / r.point[0];
            if (ratio < 4.75 || ratio > 5.25) {
                offenders += fmt(" %s#%zu(%g,%g,%g obfn=%.3g ratio=%.2f)", batch == &tabu ? "tabu" : "pga",
                                 r.run_index, r.point[0], r.point[1], r.point[2], r.obfn, ratio);
            }
        }
    }
    report(1, offenders.empty() && elapsed < 600.0,
           fmt("%d solutions with obfn < 0.01, %.1f s;", good, elapsed) +
               (offenders.empty() ? std::string(" all ratios in [4.75, 5.25]") : " off-ratio:" + offenders));

    // 2: best-of-10 terminal speed.
    auto best_speed = [](const harness::ExperimentResult& b) {
        const auto it = std::min_element(b.runs.begin(), b.runs.end(),
                                         [](const auto& x, const auto& y) { return x.obfn < y.obfn; });
        return it->speed_rpm;
    };
    const double ts = best_speed(tabu);
    const double ps = best_speed(pga);
    report(2, std::abs(ts - 300.0) <= 2.0 && std::abs(ps - 300.0) <= 2.0,
           fmt("best-of-10 speed tabu %.3f rpm, pga %.3f rpm", ts, ps));

    // 3: evaluation budgets.
    std::vector<double> te;
    std::vector<double> pe;
    for (const auto& r : tabu.runs) te.push_back(static_cast<double>(r.evals));
    for (const auto& r : pga.runs) pe.push_back(static_cast<double>(r.evals));
    const double tm = median(te);
    const double pm = median(pe);
    const bool pga_in = std::all_of(pe.begin(), pe.end(), [](double e) { return e >= 6400 && e <= 7600; });
    report(3, tm < 2500 && tm < 0.5 * pm && pga_in,
           fmt("median evals tabu %.0f, pga %.0f; pga range [%.0f, %.0f]", tm, pm,
               *std::min_element(pe.begin(), pe.end()), *std::max_element(pe.begin(), pe.end())));
}

void criterion_circuit_b() {
    const auto cal = circuits::calibrate_record(circuits::CalibrationRecord{}, 0.75);
    const circuits::DesignPointB ref{43, 678, 696, 276};
    const auto integ = circuits::terminal_only(circuits::default_integrator());
    const auto on = sim::integrate(circuits::build_circuit_b(ref, {true, 0.75}, cal), integ).terminal;
    const auto off = sim::integrate(circuits::build_circuit_b(ref, {false, 0.75}, cal), integ).terminal;
    const bool ok = std::abs(on.motor_speed_rpm - 300.0) <= 5.0 && std::abs(off.motor_speed_rpm - 378.0) <= 10.0 &&
                    std::abs(on.pump_flow_lpm[1] - 28.9) <= 1.5 && std::abs(on.pump_flow_lpm[0] - 189.4) <= 5.0;
    report(4, ok,
           fmt("fault-on %.2f rpm, fault-off %.2f rpm, boost %.2f L/min, main %.2f L/min", on.motor_speed_rpm,
               off.motor_speed_rpm, on.pump_flow_lpm[1], on.pump_flow_lpm[0]));
}

void criterion_stats() {
    const std::vector<double> evals{818, 709, 888, 921, 777, 701, 907, 707, 679, 877};
    const auto s = harness::summarize(evals);
    report(5, std::abs(s.mean - 798.4) <= 0.01 && s.sd && std::abs(*s.sd - 95.43) <= 0.01,
           fmt("mean %.4f, sd %.4f", s.mean, s.sd.value_or(NAN)));
}

opt::ParameterSpace box(std::size_t n, double lo, double hi, double step) {
    std::vector<opt::ParameterSpec> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back({"x" + std::to_string(i), lo, hi, step});
    return opt::ParameterSpace(std::move(p));
}

double sphere(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

double rastrigin(std::span<const double> v) {
    double s = 10.0 * static_cast<double>(v.size());
    for (double x : v) s += x * x - 10.0 * std::cos(2.0 * M_PI * x);
    return s;
}

struct TabuAudit : opt::TabuObserver {
    bool tabu_evaluated = false;
    bool foreign = false;
    void on_evaluate(const opt::TabuState& s, const opt::GridPoint& p) override { tabu_evaluated |= opt::is_tabu(p, s); }
    void on_diversify(const opt::TabuState& s, const opt::GridPoint& d) override {
        if (s.intermediate.empty()) return;
        for (std::size_t i = 0; i < d.size(); ++i) {
            bool found = false;
            for (const auto& e : s.intermediate) found |= e.point[i] == d[i];
            foreign |= !found;
        }
    }
};

void criterion_properties() {
    constexpr int kCases = 100;
    std::mt19937_64 rng(606);
    std::vector<std::string> broken;

    // Tabu list against a queue.
    {
        const auto space = box(2, 0, 10, 1);
        bool ok = true;
        for (int c = 0; c < kCases; ++c) {
            opt::TabuConfig cfg;
            cfg.tabu_size = 1 + rng() % 10;
            auto s = opt::make_state(cfg, space);
            std::deque<opt::GridPoint> q;
            for (int k = 0, n = static_cast<int>(rng() % 40); k < n; ++k) {
                const auto p = space.random_point(rng);
                opt::record_accepted(p, 0.0, s);
                q.push_back(p);
                if (q.size() > cfg.tabu_size) q.pop_front();
            }
            ok &= s.tabu_list.size() == q.size();
            for (std::size_t i = 0; ok && i < q.size(); ++i) ok &= s.tabu_list[i].point == q[i];
        }
        if (!ok) broken.push_back("tabu FIFO");
    }
    // Whole searches: no tabu evaluation, diversification from memory.
    {
        const auto space = box(2, -5.12, 5.12, 0.01);
        bool tabu_ok = true;
        bool div_ok = true;
        for (int c = 0; c < kCases; ++c) {
            TabuAudit a;
            (void)opt::tabu_search(rastrigin, space, opt::TabuConfig{}, 1000 + c, &a);
            tabu_ok &= !a.tabu_evaluated;
            div_ok &= !a.foreign;
        }
        if (!tabu_ok) broken.push_back("tabu point evaluated");
        if (!div_ok) broken.push_back("diversification outside memory");
    }
    // Decode bounds and monotonicity.
    {
        const opt::ParameterSpace space({{"m", 10.0, 1000.0, 1.0}});
        bool ok = opt::decode(opt::Genome(10, 0), space, 10)[0] == 0 &&
                  opt::decode(opt::Genome(10, 1), space, 10)[0] == space[0].levels();
        std::uniform_int_distribution<std::uint64_t> u(0, 1023);
        auto field = [](std::uint64_t v) {
            opt::Genome g(10);
            for (int b = 0; b < 10; ++b) g[9 - b] = (v >> b) & 1u;
            return g;
        };
        for (int c = 0; c < kCases; ++c) {
            auto x = u(rng);
            auto y = u(rng);
            if (x > y) std::swap(x, y);
            ok &= opt::decode(field(x), space, 10)[0] <= opt::decode(field(y), space, 10)[0];
        }
        if (!ok) broken.push_back("decode");
    }
    // Migration keeps sizes and moves only existing genomes.
    {
        bool ok = true;
        std::uniform_real_distribution<double> u(0.0, 10.0);
        for (int c = 0; c < kCases; ++c) {
            std::vector<opt::Subpopulation> islands(8);
            std::map<opt::Genome, int> pre;
            for (std::size_t i = 0; i < 8; ++i) {
                islands[i].island_index = i;
                for (int k = 0; k < 20; ++k) {
                    islands[i].members.push_back({opt::random_genome(12, rng), {}, std::floor(u(rng))});
                    ++pre[islands[i].members.back().genome];
                }
            }
            opt::migrate(islands, 4);
            for (const auto& s : islands) {
                ok &= s.members.size() == 20;
                for (const auto& m : s.members) ok &= pre.count(m.genome) == 1;
            }
        }
        if (!ok) broken.push_back("migration");
    }
    // Objectives: zero iff no speed error, increasing in each penalty ratio.
    {
        bool ok = true;
        std::uniform_real_distribution<double> w(0.0, 600.0);
        std::uniform_real_distribution<double> q(1.0, 300.0);
        const circuits::ObjectiveConfigA ca;
        const circuits::ObjectiveConfigB cb;
        for (int c = 0; c < kCases; ++c) {
            sim::TerminalMetrics m;
            m.motor_speed_rpm = w(rng);
            m.pump_flow_lpm = {q(rng)};
            m.relief_flow_lpm = {q(rng)};
            const circuits::DesignPointA dp{static_cast<double>(10 + rng() % 190), 300, 30};
            const double f = circuits::objective_a(m, dp, ca);
            ok &= (f == 0.0) == (m.motor_speed_rpm == 300.0);
            auto more = m;
            more.relief_flow_lpm[0] *= 1.1;
            ok &= circuits::objective_a(more, dp, ca) > f;
            auto bigger = dp;
            bigger.pump_disp += 1.0;
            ok &= circuits::objective_a(m, bigger, ca) > f;
            const circuits::BranchFlows main{m.pump_flow_lpm[0], m.relief_flow_lpm[0]};
            const double g = circuits::objective_b(m.motor_speed_rpm, main, main, cb);
            ok &= circuits::objective_b(m.motor_speed_rpm, {main.pump_flow, main.relief_flow * 1.1}, main, cb) > g;
            ok &= circuits::objective_b(m.motor_speed_rpm, main, {main.pump_flow, main.relief_flow * 1.1}, cb) > g;
            ok &= circuits::objective_b(300.0, main, main, cb) == 0.0;
        }
        if (!ok) broken.push_back("objectives");
    }
    // RK4 step halving on circuit A.
    {
        const circuits::CalibrationRecord cal;
        const auto& space = circuits::design_space_a();
        auto coarse = circuits::terminal_only(circuits::default_integrator());
        auto fine = coarse;
        fine.dt /= 2.0;
        fine = circuits::terminal_only(fine);
        double worst = 0.0;
        for (int c = 0; c < kCases; ++c) {
            const auto v = space.values(space.random_point(rng));
            const auto net = circuits::build_circuit_a(circuits::design_a_from(v), cal);
            const double a = sim::integrate(net, coarse).terminal.motor_speed_rpm;
            const double b = sim::integrate(net, fine).terminal.motor_speed_rpm;
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-9));
        }
        if (!(worst < 1e-3)) broken.push_back(fmt("step halving (worst %.2e)", worst));
    }

    std::string detail = fmt("7 suites x %d cases", kCases);
    for (const auto& b : broken) detail += "; broken: " + b;
    report(6, broken.empty(), detail);
}

void criterion_analytic() {
    const auto t0 = Clock::now();
    const auto s3 = box(3, -5.12, 5.12, 0.01);
    const auto r2 = box(2, -5.12, 5.12, 0.01);
    // The optimum sits at grid index 512 in every coordinate.
    auto near_origin = [](const opt::GridPoint& p) {
        return std::all_of(p.begin(), p.end(), [](std::int64_t k) { return std::abs(k - 512) <= 1; });
    };
    int tabu_sphere = 0, tabu_ras = 0, pga_sphere = 0, pga_ras = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        tabu_sphere += near_origin(opt::tabu_search(sphere, s3, opt::TabuConfig{}, seed).point);
        tabu_ras += near_origin(opt::tabu_search(rastrigin, r2, opt::TabuConfig{}, seed).point);
        pga_sphere += near_origin(opt::pga_run(sphere, s3, opt::PGAConfig{}, seed).point);
        pga_ras += near_origin(opt::pga_run(rastrigin, r2, opt::PGAConfig{}, seed).point);
    }
    const double elapsed = seconds_since(t0);
    report(7, tabu_sphere == 10 && pga_sphere == 10 && tabu_ras >= 8 && pga_ras >= 8 && elapsed < 60.0,
           fmt("sphere tabu %d/10 pga %d/10, multimodal tabu %d/10 pga %d/10, %.1f s", tabu_sphere, pga_sphere,
               tabu_ras, pga_ras, elapsed));
}

}  // namespace

int main() {
    criteria_circuit_a();
    criterion_circuit_b();
    criterion_stats();
    criterion_properties();
    criterion_analytic();
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
