#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "osc/energy.hpp"
#include "osc/generators.hpp"
#include "osc/instance_io.hpp"
#include "osc/rng.hpp"

using namespace osc;

TEST_CASE("instance normalises edges and rejects malformed input") {
    IsingInstance inst(4, {{2, 1, -1.0}, {0, 3, 2.0}, {0, 1, 0.0}, {1, 3, 0.5}});
    REQUIRE(inst.edge_count() == 3);
    CHECK(inst.edges()[0] == Edge{0, 3, 2.0});
    CHECK(inst.edges()[1] == Edge{1, 2, -1.0});
    CHECK(inst.edges()[2] == Edge{1, 3, 0.5});
    CHECK(inst.fields().size() == 4);
    CHECK_FALSE(inst.has_fields());
    CHECK(inst.weight(2, 1) == -1.0);
    CHECK(inst.weight(0, 2) == 0.0);
    CHECK_FALSE(inst.integral());

    const Matrix j = inst.coupling_matrix();
    CHECK(j.isApprox(j.transpose()));
    CHECK(j.diagonal().isZero());
    CHECK(j.isApprox(oracle::dense_j(inst)));

    CHECK_THROWS_AS(IsingInstance(3, {{1, 1, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(IsingInstance(3, {{0, 1, 1.0}, {1, 0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(IsingInstance(3, {{0, 3, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(IsingInstance(3, {{0, 1, std::nan("")}}), std::invalid_argument);
    CHECK_THROWS_AS(IsingInstance(3, {}, Vector::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(IsingInstance(0, {}), std::invalid_argument);
}

TEST_CASE("spin configurations hold only +-1") {
    CHECK_THROWS_AS(SpinConfig({1, 0, -1}), std::invalid_argument);
    SpinConfig s({1, -1});
    CHECK_THROWS_AS(s.set(0, 2), std::invalid_argument);
    s.flip(1);
    CHECK(s == SpinConfig({1, 1}));
    CHECK(s.flipped() == SpinConfig({-1, -1}));
    Vector v(3);
    v << 0.0, -0.1, 2.0;
    CHECK(SpinConfig::from_signs(v) == SpinConfig({1, -1, 1}));  // sign(0) = +1
}

TEST_CASE("energy examples") {
    // Mobius N=8 with alternating halves
    const IsingInstance m8 = gen_mobius_ladder(4);
    const SpinConfig s8({1, -1, 1, -1, -1, 1, -1, 1});
    CHECK(energy(m8, s8) == -8.0);
    CHECK(frustration(m8, s8).count == 2);

    const IsingInstance empty(5, {});
    for (std::uint64_t m = 0; m < 32; ++m) CHECK(energy(empty, SpinConfig(oracle::spins_of(m, 5))) == 0.0);

    const IsingInstance c4 = gen_circulant(4, {1}, {-1.0});
    const SpinConfig alt({1, -1, 1, -1});
    CHECK(energy(c4, alt) == -4.0);
    CHECK(maxcut_value(c4, alt) == 4.0);

    CHECK_THROWS_AS(energy(c4, SpinConfig({1, 1})), std::invalid_argument);
}

TEST_CASE("energy matches the dense quadratic form and has Z2 symmetry without fields") {
    Rng rng = make_rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const IsingInstance inst = gen_sk(9, CouplingDist::gaussian(), 100 + trial);
        Vector h(9);
        for (int i = 0; i < 9; ++i) h(i) = standard_normal(rng);
        const IsingInstance withh(9, inst.edges(), h);
        for (int k = 0; k < 20; ++k) {
            const std::vector<int> s = oracle::spins_of(rng() & 511, 9);
            CHECK(energy(withh, SpinConfig(s)) == doctest::Approx(oracle::dense_energy(withh, s)).epsilon(1e-12));
            CHECK(energy(inst, SpinConfig(s)) == doctest::Approx(energy(inst, SpinConfig(s).flipped())).epsilon(1e-12));
        }
    }
}

TEST_CASE("absorbed fields reproduce the original energies") {
    Rng rng = make_rng(11);
    const std::vector<IsingInstance> family = {gen_ladder_field(5), gen_chimera_bf(1, 1, 0.7, 0.3, 3),
                                               IsingInstance(6, gen_sk(6, CouplingDist::gaussian(), 4).edges(),
                                                             Vector::LinSpaced(6, -1.0, 1.5))};
    for (const IsingInstance& inst : family) {
        const IsingInstance ext = absorb_fields(inst);
        CHECK(ext.size() == inst.size() + 1);
        CHECK_FALSE(ext.has_fields());
        for (int k = 0; k < 1000; ++k) {
            const std::vector<int> s = oracle::spins_of(rng(), inst.size());
            std::vector<int> t = {1};
            t.insert(t.end(), s.begin(), s.end());
            CHECK(energy(inst, SpinConfig(s)) == doctest::Approx(energy(ext, SpinConfig(t))).epsilon(1e-12));
        }
    }
    const IsingInstance plain = gen_mobius_ladder(3);
    const IsingInstance ext = absorb_fields(plain);
    CHECK(ext.edge_count() == plain.edge_count());
    CHECK(ext.degrees()[0] == 0);
    CHECK(absorb_fields(gen_ladder_field(3)).edge_count() == 15);
}

TEST_CASE("frustration follows the coupling preference") {
    const IsingInstance ring = gen_circulant(6, {1}, {1.0});
    CHECK(frustration(ring, SpinConfig::all_up(6)).count == 0);
    const SpinConfig one({1, 1, 1, -1, 1, 1});
    CHECK(frustration(ring, one).count == 2);
    CHECK(frustration(ring, one).fraction == doctest::Approx(2.0 / 6.0));
    const IsingInstance af = gen_circulant(6, {1}, {-1.0});
    CHECK(frustration(af, SpinConfig::all_up(6)).count == 6);
}

TEST_CASE("local fields give the single-flip energy change") {
    const IsingInstance inst(7, gen_sk(7, CouplingDist::gaussian(), 9).edges(), Vector::LinSpaced(7, -0.5, 0.5));
    SpinConfig s({1, -1, -1, 1, 1, -1, 1});
    const Vector l = local_fields(inst, s);
    for (int i = 0; i < 7; ++i) {
        SpinConfig t = s;
        t.flip(i);
        CHECK(energy(inst, t) - energy(inst, s) == doctest::Approx(2.0 * s[i] * l(i)).epsilon(1e-12));
    }
    const double e = descend(inst, s);
    CHECK(e == doctest::Approx(energy(inst, s)));
    const Vector l2 = local_fields(inst, s);
    for (int i = 0; i < 7; ++i) CHECK(s[i] * l2(i) >= -1e-12);  // no improving flip left
}

TEST_CASE("instance documents round-trip bit-exactly") {
    IsingInstance inst = gen_sk(6, CouplingDist::gaussian(), 21);
    inst = IsingInstance(6, inst.edges(), Vector::LinSpaced(6, 0.1, 0.7), inst.meta());
    const std::string text = to_json_string(inst);
    const IsingInstance back = from_json_string(text);
    CHECK(back == inst);
    CHECK(back.meta().model == "sk");
    CHECK(back.meta().seed == 21);
    CHECK(to_json_string(back) == text);

    const auto dir = std::filesystem::temp_directory_path() / "osc_unit_io";
    save_instance(inst, dir / "a.json");
    CHECK(load_instance(dir / "a.json") == inst);
    std::filesystem::remove_all(dir);

    CHECK_THROWS_AS(from_json_string("{\"n\": 2, \"edges\": [[0, 1]]}"), std::invalid_argument);
    CHECK_THROWS_AS(from_json_string("not json"), std::invalid_argument);
    CHECK_THROWS_AS(from_json_string("{\"n\": 2, \"edges\": [], \"fields\": [0]}"), std::invalid_argument);
}
