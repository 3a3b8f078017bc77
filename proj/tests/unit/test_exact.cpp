#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "osc/energy.hpp"
#include "osc/exact.hpp"
#include "osc/generators.hpp"

using namespace osc;

TEST_CASE("Gray code visits every state once") {
    std::set<std::uint64_t> seen{0};
    std::uint64_t state = 0;
    gray_code_walk(6, [&](int bit) {
        state ^= std::uint64_t{1} << bit;
        seen.insert(state);
    });
    CHECK(seen.size() == 64);
}

TEST_CASE("brute force examples") {
    const SolveReport k4 = brute_force(gen_circulant(4, {1, 2}, {-1.0, -1.0}), true);
    CHECK(k4.best_energy == -2.0);
    CHECK(k4.ground_degeneracy == 6u);
    const SolveReport m8 = brute_force(gen_mobius_ladder(4), true);
    CHECK(m8.best_energy == -8.0);
    CHECK(m8.ground_degeneracy == 8u);
    CHECK(energy(gen_mobius_ladder(4), m8.best_config) == -8.0);
    const IsingInstance pair(2, {{0, 1, -1.0}});
    const SolveReport p = brute_force(pair, true);
    CHECK(p.best_energy == -1.0);
    CHECK(p.ground_degeneracy == 2u);
    CHECK(p.status == SolveStatus::optimal);
    CHECK(p.gap == 0.0);
    CHECK_THROWS_AS(brute_force(gen_mobius_ladder(17)), std::invalid_argument);
}

TEST_CASE("brute force agrees with plain enumeration") {
    std::vector<IsingInstance> family;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        family.push_back(gen_sk(11, CouplingDist::gaussian(), seed));
        family.push_back(gen_sk(10, CouplingDist::bimodal(), seed));
        family.push_back(gen_chimera_bf(1, 1, 0.9, 0.1, seed));
        family.push_back(gen_random_regular(12, 3, CouplingDist::bimodal(), seed));
    }
    family.push_back(gen_ladder_field(5));
    for (const IsingInstance& inst : family) {
        const auto m = oracle::enumerate(inst);
        const SolveReport r = brute_force(inst, true);
        CHECK(r.best_energy == doctest::Approx(m.energy));
        CHECK(r.ground_degeneracy == m.count);
        CHECK(energy(inst, r.best_config) == doctest::Approx(m.energy));
    }
}

TEST_CASE("optimality gap") {
    CHECK(optimality_gap(-8, -8) == 0.0);
    CHECK(optimality_gap(-8, -10) == 0.25);
    CHECK(std::isinf(optimality_gap(0, -1)));
    CHECK(optimality_gap(0, 0) == 0.0);
    CHECK_THROWS_AS(optimality_gap(-8, -6), std::invalid_argument);
}

TEST_CASE("branch and bound examples") {
    const SolveReport r = branch_and_bound(gen_mobius_ladder(10));
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.best_energy == -26.0);
    CHECK(r.gap == 0.0);
    CHECK(r.lower_bound <= r.best_energy);
    CHECK(r.time_to_zero_gap_s.has_value());

    BnbOptions stop;
    stop.time_limit_s = 0.0;
    stop.heuristic_incumbent = false;
    stop.spectral_root_bound = false;
    const SolveReport t = branch_and_bound(gen_sk(24, CouplingDist::gaussian(), 1), stop);
    CHECK(t.status == SolveStatus::time_limit);
    CHECK(t.gap > 0.0);
    CHECK(t.lower_bound <= t.best_energy);

    BnbOptions budget;
    budget.node_budget = 5;
    budget.heuristic_incumbent = false;
    CHECK(branch_and_bound(gen_sk(24, CouplingDist::gaussian(), 1), budget).status == SolveStatus::budget);
}

TEST_CASE("branch and bound matches brute force and its bounds are admissible") {
    std::vector<IsingInstance> family;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        family.push_back(gen_sk(12, CouplingDist::gaussian(), seed));
        family.push_back(gen_sk(12, CouplingDist::bimodal(), seed));
        family.push_back(gen_torus(3, 4, CouplingDist::bimodal(), seed));
        family.push_back(gen_chimera_bf(1, 1, 0.9, 0.1, seed));
        family.push_back(rewire(gen_mobius_ladder(7), 3, seed).instance);
    }
    family.push_back(gen_ladder_field(6));
    for (const IsingInstance& inst : family) {
        const int n = inst.size();
        // exact minimum over every completion of a partial assignment
        auto completion_min = [&](const std::vector<int>& vars, const std::vector<int>& vals) {
            double best = std::numeric_limits<double>::infinity();
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
                std::vector<int> s = oracle::spins_of(m, n);
                bool ok = true;
                for (std::size_t t = 0; t < vars.size() && ok; ++t)
                    ok = s[static_cast<std::size_t>(vars[t])] == vals[t];
                if (ok) best = std::min(best, oracle::dense_energy(inst, s));
            }
            return best;
        };
        int audited = 0;
        bool admissible = true;
        BnbOptions o;
        o.audit = [&](const NodeEvent& ev) {
            if (audited++ % 7) return;
            if (ev.bound > completion_min(*ev.fixed_vars, *ev.fixed_values) + 1e-9) admissible = false;
        };
        const SolveReport r = branch_and_bound(inst, o);
        CHECK(admissible);
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.best_energy == doctest::Approx(oracle::enumerate(inst).energy));
        CHECK(energy(inst, r.best_config) == doctest::Approx(r.best_energy));
    }
}

TEST_CASE("gap trace is monotone") {
    BnbOptions o;
    o.heuristic_incumbent = false;
    const SolveReport r = branch_and_bound(rewire(gen_mobius_ladder(30), 20, 4).instance, o);
    REQUIRE(!r.gap_trace.empty());
    for (std::size_t i = 1; i < r.gap_trace.size(); ++i) {
        CHECK(r.gap_trace[i].best_energy <= r.gap_trace[i - 1].best_energy);
        CHECK(r.gap_trace[i].lower_bound >= r.gap_trace[i - 1].lower_bound);
        CHECK(r.gap_trace[i].elapsed_s >= r.gap_trace[i - 1].elapsed_s);
    }
    CHECK(r.gap_trace.back().gap == 0.0);

    const std::string csv = gap_trace_csv(r);
    CHECK(csv.rfind("elapsed_s,gap,best_energy,lower_bound\n", 0) == 0);
    const auto j = report_to_json(r);
    CHECK(j.at("status") == "optimal");
    CHECK(j.at("best_energy") == r.best_energy);
}

TEST_CASE("zero-field degeneracy is even") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SolveReport r = brute_force(gen_sk(9, CouplingDist::bimodal(), seed), true);
        CHECK(*r.ground_degeneracy % 2 == 0);
    }
}
