#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "catch_amalgamated.hpp"
#include "hydro/opt/pga.hpp"

using namespace hydro::opt;
using Catch::Approx;

namespace {

double sphere(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

ParameterSpace box(std::size_t n, double lo, double hi, double step) {
    std::vector<ParameterSpec> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back({"x" + std::to_string(i), lo, hi, step});
    return ParameterSpace(std::move(p));
}

Genome bits(const std::string& s) {
    Genome g;
    for (char c : s) g.push_back(c == '1');
    return g;
}

Genome field(std::uint64_t value, std::size_t width) {
    Genome g(width);
    for (std::size_t b = 0; b < width; ++b) g[width - 1 - b] = (value >> b) & 1u;
    return g;
}

std::vector<Subpopulation> random_islands(std::size_t n, std::size_t size, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Subpopulation> islands(n);
    for (std::size_t i = 0; i < n; ++i) {
        islands[i].island_index = i;
        for (std::size_t k = 0; k < size; ++k) {
            // Coarse values so ties happen.
            islands[i].members.push_back({random_genome(12, rng), {}, std::floor(u(rng) * 10.0)});
        }
    }
    return islands;
}

std::map<Genome, int> multiset(const std::vector<Individual>& v) {
    std::map<Genome, int> m;
    for (const auto& i : v) ++m[i.genome];
    return m;
}

// Receiver keeps everything but its `count` worst; gains the sender's `count` best.
std::map<Genome, int> migration_oracle(const Subpopulation& receiver, const Subpopulation& sender, std::size_t count) {
    auto by_value = [](std::vector<Individual> v) {
        std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.obfn < b.obfn; });
        return v;
    };
    const auto r = by_value(receiver.members);
    const auto s = by_value(sender.members);
    std::map<Genome, int> m;
    for (std::size_t k = 0; k + count < r.size(); ++k) ++m[r[k].genome];
    for (std::size_t k = 0; k < count; ++k) ++m[s[k].genome];
    return m;
}

struct EliteWatcher : PGAObserver {
    std::vector<double> last;
    bool rose = false;
    std::size_t generations = 0;
    std::size_t migrations = 0;
    std::size_t population = 0;

    static double best(const Subpopulation& s) {
        double b = INFINITY;
        for (const auto& m : s.members) b = std::min(b, m.obfn);
        return b;
    }
    void on_generation(std::size_t, const std::vector<Subpopulation>& islands) override {
        ++generations;
        population = 0;
        for (std::size_t i = 0; i < islands.size(); ++i) {
            population += islands[i].members.size();
            const double b = best(islands[i]);
            if (i < last.size()) rose |= b > last[i];
        }
        snapshot(islands);
    }
    void on_migration(const std::vector<Subpopulation>&, const std::vector<Subpopulation>& after) override {
        ++migrations;
        snapshot(after);
    }
    void snapshot(const std::vector<Subpopulation>& islands) {
        last.clear();
        for (const auto& s : islands) last.push_back(best(s));
    }
};

}  // namespace

TEST_CASE("default operator rate ladders") {
    const auto pc = PGAConfig::default_crossover_rates(8);
    const auto pm = PGAConfig::default_mutation_rates(8);
    REQUIRE(pc.size() == 8);
    CHECK(pc.front() == Approx(0.60));
    CHECK(pc.back() == Approx(0.95));
    CHECK(pm.front() == Approx(0.001));
    CHECK(pm.back() == Approx(0.05));
    for (std::size_t i = 1; i < 8; ++i) {
        CHECK(pc[i] - pc[i - 1] == Approx(0.05));
        CHECK(pm[i] / pm[i - 1] == Approx(std::pow(50.0, 1.0 / 7.0)));
    }
    CHECK_NOTHROW(PGAConfig{}.validate());
    PGAConfig bad;
    bad.migrant_count = 20;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.pm_per_island.pop_back();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("decode") {
    // motor displacement range: [10, 1000] step 1
    const ParameterSpace space({{"m", 10.0, 1000.0, 1.0}});
    CHECK(decode(Genome(10, 0), space, 10) == GridPoint{0});
    CHECK(decode(Genome(10, 1), space, 10) == GridPoint{990});
    // 512/1023 * 990 = 495.48 -> 495, i.e. 505 cc
    CHECK(field_value(field(512, 10), 0, 10) == 512);
    CHECK(space.values(decode(field(512, 10), space, 10))[0] == 505.0);
    CHECK_THROWS_AS(decode(Genome(9, 0), space, 10), std::invalid_argument);

    const auto two = box(2, -1.0, 1.0, 0.5);
    Genome g = field(1023, 10);
    const Genome lo(10, 0);
    g.insert(g.end(), lo.begin(), lo.end());
    CHECK(decode(g, two, 10) == GridPoint{4, 0});
}

TEST_CASE("property: decode is monotone in each field and stays on the grid") {
    const ParameterSpace space({{"d", 7.0, 60.0, 0.5}});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> u(0, 1023);
    for (int i = 0; i < 200; ++i) {
        auto a = u(rng);
        auto b = u(rng);
        if (a > b) std::swap(a, b);
        const auto pa = decode(field(a, 10), space, 10);
        const auto pb = decode(field(b, 10), space, 10);
        CHECK(pa[0] <= pb[0]);
        CHECK(space.contains(pb));
        CHECK(space.on_grid(space.values(pa)));
    }
}

TEST_CASE("tournament selection favours the fitter of two") {
    Subpopulation sub;
    sub.members = {{bits("0"), {}, 2.0}, {bits("1"), {}, 1.0}};
    std::mt19937_64 rng(8);
    int fitter = 0;
    constexpr int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) fitter += select_parent(sub, rng).obfn == 1.0;
    // Loses only when both draws pick the worse member.
    CHECK(static_cast<double>(fitter) / kDraws == Approx(0.75).margin(0.02));
    CHECK_THROWS_AS(select_parent(Subpopulation{}, rng), std::invalid_argument);
}

TEST_CASE("single-point crossover") {
    const auto [c, d] = crossover_at(bits("1111"), bits("0000"), 2);
    CHECK(c == bits("1100"));
    CHECK(d == bits("0011"));
    std::mt19937_64 rng(9);
    const auto [e, f] = crossover(bits("1111"), bits("0000"), 0.0, rng);
    CHECK(e == bits("1111"));
    CHECK(f == bits("0000"));
    for (int i = 0; i < 100; ++i) {
        const auto [g, h] = crossover(bits("101101"), bits("101101"), 1.0, rng);
        CHECK(g == bits("101101"));
        CHECK(h == bits("101101"));
        const auto [x, y] = crossover(bits("111111"), bits("000000"), 1.0, rng);
        // A cut strictly inside the genome: both children mix.
        CHECK(x.front() == 1);
        CHECK(x.back() == 0);
        CHECK(y.front() == 0);
        CHECK(y.back() == 1);
    }
    CHECK_THROWS_AS(crossover_at(bits("11"), bits("000"), 1), std::invalid_argument);
}

TEST_CASE("mutation") {
    std::mt19937_64 rng(10);
    const Genome g = random_genome(1000, rng);
    CHECK(mutate(g, 0.0, rng) == g);
    const Genome all = mutate(g, 1.0, rng);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(all[i] == (g[i] ^ 1u));
    const Genome zeros(10000, 0);
    const Genome m = mutate(zeros, 0.3, rng);
    const double rate = static_cast<double>(std::count(m.begin(), m.end(), 1)) / 10000.0;
    CHECK(rate == Approx(0.3).margin(0.02));
}

TEST_CASE("property: migration keeps sizes and only moves existing genomes") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        const std::size_t size = 5 + rng() % 20;
        const std::size_t count = 1 + rng() % 4;
        auto islands = random_islands(n, size, rng);
        const auto before = islands;
        migrate(islands, count);

        std::map<Genome, int> pre;
        for (const auto& s : before) {
            for (const auto& [g, k] : multiset(s.members)) pre[g] += k;
        }
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(islands[i].members.size() == size);
            CHECK(islands[i].island_index == i);
            for (const auto& m : islands[i].members) CHECK(pre.count(m.genome) == 1);
            CHECK(multiset(islands[i].members) == migration_oracle(before[i], before[(i + n - 1) % n], count));
        }
    }
}

TEST_CASE("migration spreads a planted genome around the ring") {
    std::mt19937_64 rng(13);
    auto islands = random_islands(8, 20, rng);
    const Genome planted = bits("110011001100");
    islands[0].members[5] = {planted, {}, -1.0};
    auto holds = [&](const Subpopulation& s) {
        return std::any_of(s.members.begin(), s.members.end(), [&](const auto& m) { return m.genome == planted; });
    };
    for (std::size_t event = 1; event <= 7; ++event) {
        migrate(islands, 4);
        for (std::size_t i = 0; i < 8; ++i) CHECK(holds(islands[i]) == (i <= event));
    }
}

TEST_CASE("migration in a converged population changes nothing") {
    Subpopulation one;
    for (int k = 0; k < 20; ++k) one.members.push_back({bits("101010101010"), {}, 3.0});
    std::vector<Subpopulation> islands(8, one);
    for (std::size_t i = 0; i < 8; ++i) islands[i].island_index = i;
    const auto before = islands;
    migrate(islands, 4);
    for (std::size_t i = 0; i < 8; ++i) CHECK(multiset(islands[i].members) == multiset(before[i].members));
}

TEST_CASE("elitism and the evaluation budget") {
    const auto space = box(3, -5.12, 5.12, 0.01);
    std::int64_t calls = 0;
    const Objective f = [&](std::span<const double> v) {
        ++calls;
        return sphere(v);
    };
    EliteWatcher w;
    const auto r = pga_search(f, space, PGAConfig{}, 3, &w);
    CHECK_FALSE(w.rose);
    CHECK(w.generations == 42);
    CHECK(w.migrations == 14);
    CHECK(w.population == 160);
    // 160 initial + 42 generations of 8 islands x 19 children.
    CHECK(r.ga_evals == 160 + 42 * 152);
    CHECK(r.best.total_evals == r.ga_evals + r.polish_evals);
    CHECK(r.best.total_evals == calls);
    CHECK(r.best.obfn <= r.ga_best.obfn);
    CHECK(r.best.obfn == sphere(r.best.values));

    PGAConfig cached;
    cached.point_cache = true;
    calls = 0;
    const auto rc = pga_search(f, space, cached, 3);
    CHECK(rc.ga_evals < r.ga_evals);
    CHECK(rc.best.total_evals == calls);
}

TEST_CASE("PGA is deterministic per seed") {
    const auto space = box(2, -5.12, 5.12, 0.01);
    const auto a = pga_search(sphere, space, PGAConfig{}, 21);
    const auto b = pga_search(sphere, space, PGAConfig{}, 21);
    CHECK(a.best.point == b.best.point);
    CHECK(a.best.total_evals == b.best.total_evals);
    CHECK(a.best.evals_at_best == b.best.evals_at_best);
}
