#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "osc/energy.hpp"
#include "osc/exact.hpp"
#include "osc/generators.hpp"
#include "osc/planarity.hpp"
#include "osc/spectral.hpp"

using namespace osc;

namespace {

std::set<std::pair<int, int>> pair_set(const IsingInstance& inst) {
    std::set<std::pair<int, int>> out;
    for (const Edge& e : inst.edges()) out.insert({e.i, e.j});
    return out;
}

bool regular(const IsingInstance& inst, int k) {
    for (int d : inst.degrees())
        if (d != k) return false;
    return true;
}

std::vector<std::pair<int, int>> pairs_of(const IsingInstance& inst) {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : inst.edges()) out.push_back({e.i, e.j});
    return out;
}

}  // namespace

TEST_CASE("Mobius ladder") {
    const IsingInstance m8 = gen_mobius_ladder(4);
    CHECK(m8.size() == 8);
    CHECK(m8.edge_count() == 12);
    std::set<std::pair<int, int>> expected;
    for (int i = 0; i < 8; ++i) expected.insert({std::min(i, (i + 1) % 8), std::max(i, (i + 1) % 8)});
    for (int i = 0; i < 4; ++i) expected.insert({i, i + 4});
    CHECK(pair_set(m8) == expected);
    for (const Edge& e : m8.edges()) CHECK(e.w == -1.0);

    const IsingInstance k4 = gen_mobius_ladder(2);
    CHECK(k4.edge_count() == 6);

    const IsingInstance big = gen_mobius_ladder(500);
    CHECK(big.edge_count() == 1500);
    CHECK(regular(big, 3));
    CHECK_THROWS_AS(gen_mobius_ladder(1), std::invalid_argument);
}

TEST_CASE("circulants") {
    const IsingInstance c4 = gen_circulant(4, {1}, {-1.0});
    CHECK(c4.edge_count() == 4);
    CHECK(regular(c4, 2));
    CHECK(gen_circulant(8, {1, 4}, {-1.0, -1.0}) == gen_mobius_ladder(4));
    CHECK_THROWS_AS(gen_circulant(8, {5}, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gen_circulant(8, {2, 2}, {-1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gen_circulant(7, {0}, {-1.0}), std::invalid_argument);

    const IsingInstance c50 = gen_random_circulant(50, 40, 5);
    CHECK(c50.edge_count() == 1000);
    CHECK(regular(c50, 40));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const IsingInstance odd = gen_random_circulant(30, 7, seed);
        CHECK(regular(odd, 7));
        CHECK(odd.weight(0, 15) == -1.0);
        CHECK(circulant_first_row(odd).has_value());
    }
}

TEST_CASE("random regular graphs") {
    CHECK(pair_set(gen_random_regular(4, 3, CouplingDist::unweighted(), 1)) == pair_set(gen_mobius_ladder(2)));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IsingInstance g = gen_random_regular(100, 3, CouplingDist::unweighted(), seed);
        CHECK(g.edge_count() == 150);
        CHECK(regular(g, 3));
    }
    const IsingInstance b = gen_random_regular(20, 4, CouplingDist::bimodal(), 3);
    for (const Edge& e : b.edges()) CHECK(std::abs(e.w) == 1.0);
    CHECK_THROWS_AS(gen_random_regular(5, 3, CouplingDist::unweighted(), 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_random_regular(4, 4, CouplingDist::unweighted(), 0), std::invalid_argument);
}

TEST_CASE("SK couplings") {
    const IsingInstance g = gen_sk(40, CouplingDist::gaussian(), 2);
    CHECK(g.edge_count() == 40 * 39 / 2);
    double sum = 0, sq = 0;
    for (const Edge& e : g.edges()) {
        sum += e.w;
        sq += e.w * e.w;
    }
    const double n = static_cast<double>(g.edge_count());
    CHECK(std::abs(sum / n) < 0.15);
    CHECK(std::abs(sq / n - 1.0) < 0.15);
    const IsingInstance b = gen_sk(10, CouplingDist::bimodal(), 2);
    for (const Edge& e : b.edges()) CHECK(std::abs(e.w) == 1.0);
    CHECK(gen_sk(10, CouplingDist::bimodal(), 2) == b);
    CHECK_FALSE(gen_sk(10, CouplingDist::bimodal(), 3) == b);
    CHECK_THROWS_AS(gen_sk(1, CouplingDist::bimodal(), 0), std::invalid_argument);
}

TEST_CASE("Mattis instances plant their gauge") {
    MattisTopology complete;
    complete.n = 6;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [inst, planted] = gen_mattis(complete, CouplingDist::bimodal(), seed);
        CHECK(energy(inst, planted.epsilon) == -15.0);
        CHECK(frustration(inst, planted.epsilon).count == 0);
        CHECK(oracle::enumerate(inst).energy == -15.0);
    }
    const auto [ferro, ones] = gen_mattis(complete, CouplingDist::unweighted(), 0);
    CHECK(ones.epsilon == SpinConfig::all_up(6));
    for (const Edge& e : ferro.edges()) CHECK(e.w == 1.0);

    MattisTopology torus;
    torus.kind = MattisTopology::Kind::torus;
    torus.rows = 4;
    torus.cols = 5;
    const auto [t, eps] = gen_mattis(torus, CouplingDist::gaussian(), 8);
    CHECK(energy(t, eps.epsilon) == -static_cast<double>(t.edge_count()));
}

TEST_CASE("tori") {
    const IsingInstance t = gen_torus(4, 4, CouplingDist::unweighted(), 0);
    CHECK(t.edge_count() == 32);
    CHECK(regular(t, 4));
    std::vector<int> checker(16);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) checker[static_cast<std::size_t>(r * 4 + c)] = (r + c) % 2 ? -1 : 1;
    CHECK(energy(t, SpinConfig(checker)) == -32.0);
    CHECK(oracle::enumerate(t).energy == -32.0);

    // 3x3: odd cycles in both directions, so some edges stay frustrated
    const IsingInstance t3 = gen_torus(3, 3, CouplingDist::unweighted(), 0);
    CHECK(t3.edge_count() == 18);
    const auto m = oracle::enumerate(t3);
    CHECK(m.energy > -18.0);
    CHECK(brute_force(t3).best_energy == m.energy);
    CHECK_THROWS_AS(gen_torus(2, 4, CouplingDist::unweighted(), 0), std::invalid_argument);
}

TEST_CASE("BF-Chimera") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IsingInstance c = gen_chimera_bf(1, 1, 0.9, 0.1, seed);
        CHECK(c.size() == 8);
        CHECK(c.edge_count() == 16);
        CHECK(c.has_fields());
        for (const Edge& e : c.edges()) CHECK(e.w == 1.0);
        for (int i = 0; i < 8; ++i) CHECK((c.fields()(i) == 0.0 || c.fields()(i) == 1.0));
        const auto m = oracle::enumerate(c);
        CHECK(m.count == 1);
        CHECK(energy(c, SpinConfig::all_up(8)) == m.energy);
    }
    const IsingInstance c2 = gen_chimera_bf(2, 2, 0.9, 0.1, 1);
    CHECK(c2.size() == 32);
    CHECK(c2.edge_count() == 16 * 4 + 4 * 2 + 4 * 2);
    CHECK_THROWS_AS(gen_chimera_bf(1, 1, 0.5, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_chimera_bf(1, 1, 0.9, 0.2, 0), std::invalid_argument);
}

TEST_CASE("ladders with field and planar cubic rewiring") {
    const IsingInstance l3 = gen_ladder_field(3);
    CHECK(l3.size() == 6);
    CHECK(l3.edge_count() == 9);
    CHECK(regular(l3, 3));
    CHECK(is_planar(l3));
    for (int i = 0; i < 6; ++i) CHECK(l3.fields()(i) == -1.0);
    const IsingInstance l4 = gen_ladder_field(4);
    CHECK(brute_force(l4).best_energy == oracle::enumerate(l4).energy);
    CHECK_THROWS_AS(gen_ladder_field(2), std::invalid_argument);

    CHECK(gen_planar3r_field(12, 0, 5) == gen_ladder_field(6));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IsingInstance p = gen_planar3r_field(20, 15, seed);
        CHECK(regular(p, 3));
        CHECK(is_planar(p));
        CHECK(p.fields().isApprox(Vector::Constant(20, -1.0)));
    }
}

TEST_CASE("planarity") {
    CHECK(is_planar(4, pairs_of(gen_mobius_ladder(2))));
    CHECK_FALSE(is_planar(5, pairs_of(gen_sk(5, CouplingDist::bimodal(), 0))));
    std::vector<std::pair<int, int>> k33;
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) k33.push_back({a, b});
    CHECK_FALSE(is_planar(6, k33));
    CHECK_FALSE(is_planar(gen_mobius_ladder(4)));
    CHECK(is_planar(gen_ladder_field(8)));
}

TEST_CASE("rewiring preserves degrees") {
    const IsingInstance m = gen_mobius_ladder(30);
    CHECK(rewire(m, 0, 1).instance == m);
    for (double frac : {0.1, 0.4, 0.7, 1.0}) {
        const RewireResult r = rewire(m, swaps_for_fraction(m, frac), 3);
        CHECK(r.instance.degrees() == m.degrees());
        CHECK(r.instance.edge_count() == m.edge_count());
        CHECK(r.rewired_fraction > 0.0);
        CHECK(r.rewired_fraction <= 1.0);
        for (const Edge& e : r.instance.edges()) CHECK(e.w == -1.0);
    }
    CHECK(rewire(m, 5, 9).instance == rewire(m, 5, 9).instance);

    // odd n: (0,1), (N-4,N-3) -> (0,N-4), (1,N-3)
    const int n = 10;
    const IsingInstance odd = replace_edges(gen_mobius_ladder(n / 2), {{0, 1}, {n - 4, n - 3}},
                                            {{0, n - 4}, {1, n - 3}});
    CHECK(regular(odd, 3));
    CHECK(odd.weight(0, n - 4) == -1.0);
    CHECK(odd.weight(0, 1) == 0.0);
    CHECK_THROWS_AS(replace_edges(odd, {{0, 1}}, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("model spec dispatch") {
    CHECK(generate(MobiusSpec{5}, 0) == gen_mobius_ladder(5));
    CHECK(generate(SkSpec{6, CouplingDist::bimodal()}, 4) == gen_sk(6, CouplingDist::bimodal(), 4));
    CHECK(generate(TorusSpec{3, 4, CouplingDist::unweighted()}, 0).size() == 12);
    CHECK(generate(LadderFieldSpec{4}, 0) == gen_ladder_field(4));
    CHECK(CouplingDist::parse("gaussian").kind == CouplingDist::Kind::gaussian);
    CHECK_THROWS_AS(CouplingDist::parse("uniform"), std::invalid_argument);
}

TEST_CASE("ground frustration is minimal among minimisers") {
    // Every ground state of these generators has the same frustration count.
    std::vector<IsingInstance> family = {gen_mobius_ladder(4), gen_torus(3, 4, CouplingDist::bimodal(), 2),
                                         gen_random_regular(12, 3, CouplingDist::unweighted(), 3),
                                         gen_sk(10, CouplingDist::bimodal(), 4), gen_ladder_field(5)};
    for (const IsingInstance& inst : family) {
        const auto m = oracle::enumerate(inst);
        const SolveReport r = brute_force(inst);
        const int ground_count = frustration(inst, r.best_config).count;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.size()); ++mask) {
            const SpinConfig s(oracle::spins_of(mask, inst.size()));
            if (std::abs(energy(inst, s) - m.energy) < 1e-9) CHECK(frustration(inst, s).count >= ground_count);
        }
    }
}

TEST_CASE("a ring on an even number of spins has an unfrustrated ground state") {
    for (int n : {4, 8, 12}) {
        const IsingInstance ring = gen_circulant(n, {1}, {-1.0});
        const SolveReport r = brute_force(ring);
        CHECK(r.best_energy == -static_cast<double>(n));
        CHECK(frustration(ring, r.best_config).count == 0);
    }
}
