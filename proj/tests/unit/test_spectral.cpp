#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "osc/energy.hpp"
#include "osc/exact.hpp"
#include "osc/generators.hpp"
#include "osc/htnet.hpp"
#include "osc/spectral.hpp"

using namespace osc;

namespace {

Vector sorted_desc(Vector v) {
    std::sort(v.data(), v.data() + v.size(), std::greater<>());
    return v;
}

Vector dense_eigenvalues(const IsingInstance& inst) {
    return sorted_desc(Eigen::SelfAdjointEigenSolver<Matrix>(oracle::dense_j(inst)).eigenvalues());
}

}  // namespace

TEST_CASE("eigenvalue examples") {
    // K_N with w = +1: N - 1 once, -1 otherwise
    const IsingInstance k5 = gen_circulant(5, {1, 2}, {1.0, 1.0});
    const SpectralSummary s5 = eig_sym(k5);
    CHECK(s5.lambda_max() == doctest::Approx(4.0));
    for (int i = 1; i < 5; ++i) CHECK(s5.eigenvalues(i) == doctest::Approx(-1.0));
    CHECK(s5.top_multiplicity == 1);

    const IsingInstance c4 = gen_circulant(4, {1}, {1.0});
    const SpectralSummary sc = eig_sym(c4);
    CHECK(sc.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(sc.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sc.eigenvalues(2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sc.eigenvalues(3) == doctest::Approx(-2.0));

    // perfect matching: +-w, each N/2 times
    const IsingInstance matching = gen_circulant(6, {3}, {-1.0});
    const SpectralSummary sm = eig_sym(matching);
    CHECK(sm.lambda_max() == doctest::Approx(1.0));
    CHECK(sm.top_multiplicity == 3);

    for (int n_half : {4, 5, 6, 50}) {
        const int n = 2 * n_half;
        Vector expected(n);
        for (int m = 0; m < n; ++m)
            expected(m) = -2.0 * std::cos(2.0 * std::numbers::pi * m / n) - (m % 2 ? -1.0 : 1.0);
        const SpectralSummary s = eig_sym(gen_mobius_ladder(n_half));
        CHECK((s.eigenvalues - sorted_desc(expected)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(s.top_multiplicity == (n_half % 2 == 0 ? 2 : 1));
    }
}

TEST_CASE("solvers agree with a dense reference") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const IsingInstance inst = gen_sk(30, CouplingDist::gaussian(), seed);
        const Vector ref = dense_eigenvalues(inst);
        EigOptions jac;
        jac.method = EigMethod::jacobi;
        EigOptions hh;
        hh.method = EigMethod::householder;
        const SpectralSummary a = eig_sym(inst, jac);
        const SpectralSummary b = eig_sym(inst, hh);
        CHECK((a.eigenvalues - ref).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((b.eigenvalues - ref).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(a.complete);
        const Matrix j = oracle::dense_j(inst);
        for (int i = 0; i < a.vector_count(); ++i) {
            CHECK((j * a.eigenvectors.col(i) - a.eigenvalues(i) * a.eigenvectors.col(i)).norm() < 1e-8);
            CHECK(a.eigenvectors.col(i).norm() == doctest::Approx(1.0));
        }

        EigOptions pw;
        pw.method = EigMethod::power;
        const SpectralSummary p = eig_sym(inst, pw);
        CHECK(p.eigenvalues(0) == doctest::Approx(ref(0)).epsilon(1e-8));
        CHECK((j * p.eigenvectors.col(0) - ref(0) * p.eigenvectors.col(0)).norm() < 1e-4);
    }
    CHECK_THROWS_AS(eig_sym(gen_ladder_field(3)), std::invalid_argument);
}

TEST_CASE("circulant spectrum matches the dense solve") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IsingInstance inst = gen_random_circulant(24, 2 + static_cast<int>(seed % 9), seed);
        const auto row = circulant_first_row(inst);
        REQUIRE(row.has_value());
        const SpectralSummary c = circulant_spectrum(*row);
        CHECK((c.eigenvalues - dense_eigenvalues(inst)).cwiseAbs().maxCoeff() < 1e-9);
        const Matrix j = oracle::dense_j(inst);
        CHECK((c.eigenvectors.transpose() * c.eigenvectors - Matrix::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-9);
        for (int i = 0; i < c.vector_count(); ++i) {
            CHECK((j * c.eigenvectors.col(i) - c.eigenvalues(i) * c.eigenvectors.col(i)).norm() < 1e-9);
            CHECK(c.eigenvectors.col(i).cwiseAbs().minCoeff() > 0.0);
        }
    }
    CHECK_FALSE(circulant_first_row(gen_sk(6, CouplingDist::gaussian(), 1)).has_value());
}

TEST_CASE("Mobius ladders are simple") {
    for (int n_half : {4, 6, 10, 50, 250}) {
        const IsingInstance m = gen_mobius_ladder(n_half);
        const double ground = n_half % 2 == 0 ? -(3.0 * n_half - 4) : -(3.0 * n_half - 2);
        const OscVerdict v = osc_check(m, ground);
        CHECK(v.is_simple);
        CHECK(v.e_lambda_energy == ground);
        CHECK(v.degenerate);
        CHECK(v.top_multiplicity == 2);
        CHECK(v.matched_vector_index.has_value());
    }
    // the dense path agrees with the circulant one
    OscOptions dense;
    dense.circulant_fast_path = false;
    CHECK(osc_check(gen_mobius_ladder(6), -14.0, dense).is_simple);
    CHECK(brute_force(gen_mobius_ladder(6)).best_energy == -14.0);
}

TEST_CASE("verdicts against brute force") {
    // odd n: the swap (0,1),(N-4,N-3) -> (0,N-4),(1,N-3) moves the ground below E_lambda
    for (int n_half : {5, 7, 9}) {
        const int n = 2 * n_half;
        const IsingInstance r =
            replace_edges(gen_mobius_ladder(n_half), {{0, 1}, {n - 4, n - 3}}, {{0, n - 4}, {1, n - 3}});
        const double ground = oracle::enumerate(r).energy;
        const OscVerdict v = osc_check(r, ground);
        CHECK_FALSE(v.is_simple);
        CHECK(v.e_lambda_energy > ground);
    }
    // Mattis on the complete graph: the planted state is the top eigenvector pattern
    MattisTopology complete;
    complete.n = 10;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto [inst, planted] = gen_mattis(complete, CouplingDist::gaussian(), seed);
        CHECK(osc_check(inst, -45.0).is_simple);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const IsingInstance inst = gen_sk(12, CouplingDist::gaussian(), seed);
        const double ground = oracle::enumerate(inst).energy;
        const OscVerdict v = osc_check(inst, ground);
        CHECK(v.e_lambda_energy >= ground - 1e-9);
        CHECK(v.is_simple == (std::abs(v.e_lambda_energy - ground) < 1e-9));
        CHECK_THROWS_AS(osc_check(inst, v.e_lambda_energy + 1.0), std::invalid_argument);
    }
    // fields: ladder with field, ground all +1 at -3 n_half - 2 n_half... checked against enumeration
    const IsingInstance lf = gen_ladder_field(4);
    const OscVerdict vf = osc_check(lf, oracle::enumerate(lf).energy);
    CHECK(vf.fields_absorbed);
    CHECK(vf.e_lambda_energy >= oracle::enumerate(lf).energy - 1e-9);
    CHECK(vf.candidate.size() == 8);
}

TEST_CASE("projected eigenvector energies") {
    const IsingInstance k4 = gen_circulant(4, {1, 2}, {1.0, 1.0});
    EigOptions ho;
    ho.method = EigMethod::householder;
    const SpectralSummary s = eig_sym(k4, ho);
    // top vector is +-ones: all aligned, H = -6
    CHECK(projected_eigvec_energy(k4, s, 0) == -6.0);
    const IsingInstance c4 = gen_circulant(4, {1}, {-1.0});
    const SpectralSummary sc = eig_sym(c4);
    CHECK(projected_eigvec_energy(c4, sc, 0) == -4.0);
    CHECK_THROWS_AS(projected_eigvec_energy(c4, sc, 7), std::out_of_range);
}

TEST_CASE("state decomposition reproduces the Lyapunov energy") {
    const IsingInstance m = gen_mobius_ladder(4);
    const SpectralSummary s = eig_sym(m);
    HTParams p = HTParams::standard(0);
    const HTState st = ht_initial_state(8, p, 3);
    Vector v = st.v * 2.5;
    const StateDecomposition d = state_decompose(m, v, s, p.tau, p.x0);
    CHECK(d.null_component_norm < 1e-9);
    CHECK((s.eigenvectors * d.gammas - v).norm() < 1e-9);
    CHECK(d.interaction_energy == doctest::Approx(-0.5 * v.dot(oracle::dense_j(m) * v)));
    CHECK(d.reconstructed_energy == doctest::Approx(lyapunov(m, v, p)));
}
