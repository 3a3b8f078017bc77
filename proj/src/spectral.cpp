#include "osc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "osc/energy.hpp"
#include "osc/generators.hpp"
#include "osc/htnet.hpp"
#include "osc/jacobi.hpp"
#include "osc/rng.hpp"

namespace osc {

namespace {

constexpr double kPi = 3.14159265358979323846;

SpectralSummary sorted_summary(const Vector& values, const Matrix& vectors) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
    SpectralSummary out;
    out.eigenvalues.resize(values.size());
    out.eigenvectors.resize(vectors.rows(), static_cast<Eigen::Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.eigenvalues(static_cast<Eigen::Index>(k)) = values(order[k]);
        auto col = out.eigenvectors.col(static_cast<Eigen::Index>(k));
        col = vectors.col(order[k]);
        // Deterministic orientation: first clearly nonzero entry positive.
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            if (std::abs(col(r)) > 1e-12) {
                if (col(r) < 0) col = -col;
                break;
            }
        }
    }
    out.top_multiplicity = count_top(out.eigenvalues);
    out.complete = true;
    return out;
}

SpectralSummary dense_spectrum(const Matrix& a, const EigOptions& options, bool use_jacobi) {
    if (use_jacobi) {
        const auto r = cyclic_jacobi(a, options.jacobi_max_sweeps);
        if (!r.converged)
            throw std::runtime_error("Jacobi iteration did not converge within " +
                                     std::to_string(options.jacobi_max_sweeps) + " sweeps");
        return sorted_summary(r.eigenvalues, r.eigenvectors);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal QR iteration did not converge");
    return sorted_summary(solver.eigenvalues(), solver.eigenvectors());
}

// Top `count` eigenpairs of J by power iteration on J + shift I, deflating converged vectors.
SpectralSummary power_spectrum(const IsingInstance& instance, const EigOptions& options) {
    const int n = instance.size();
    const int count = std::clamp(options.power_count, 1, n);
    const Adjacency& adj = instance.adjacency();
    double shift = 0.0;  // Gershgorin bound on |lambda|
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int a = adj.offsets[i]; a < adj.offsets[i + 1]; ++a) row += std::abs(adj.weights[a]);
        shift = std::max(shift, row);
    }
    auto apply = [&](const Vector& x) {
        Vector y(n);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int a = adj.offsets[i]; a < adj.offsets[i + 1]; ++a) acc += adj.weights[a] * x(adj.neighbors[a]);
            y(i) = acc;
        }
        return y;
    };

    Rng rng = make_rng(options.power_seed);
    Matrix found(n, count);
    Vector values(count);
    for (int k = 0; k < count; ++k) {
        Vector x(n);
        for (int i = 0; i < n; ++i) x(i) = standard_normal(rng);
        auto deflate = [&](Vector& y) {
            for (int pass = 0; pass < 2; ++pass)
                for (int p = 0; p < k; ++p) y -= found.col(p).dot(y) * found.col(p);
        };
        deflate(x);
        x.normalize();
        bool converged = false;
        double lambda = 0.0;
        for (int it = 0; it < options.power_max_iters; ++it) {
            const Vector jx = apply(x);
            lambda = x.dot(jx);
            if ((jx - lambda * x).lpNorm<Eigen::Infinity>() <= options.power_tol * std::max(1.0, std::abs(lambda))) {
                converged = true;
                break;
            }
            Vector y = jx + shift * x;
            deflate(y);
            const double norm = y.norm();
            if (norm == 0.0) break;
            x = y / norm;
        }
        if (!converged)
            throw std::runtime_error("power iteration did not converge for eigenpair " + std::to_string(k));
        found.col(k) = x;
        values(k) = lambda;
    }
    SpectralSummary out = sorted_summary(values, found);
    out.complete = count == n;
    return out;
}

}  // namespace

double degeneracy_tolerance(double lambda) { return 1e-9 * std::max(1.0, std::abs(lambda)); }

int count_top(const Vector& descending) {
    if (descending.size() == 0) return 0;
    const double top = descending(0);
    const double tol = degeneracy_tolerance(top);
    int m = 0;
    while (m < descending.size() && top - descending(m) <= tol) ++m;
    return m;
}

SpectralSummary eig_sym(const IsingInstance& instance, const EigOptions& options) {
    if (instance.size() < 1) throw std::invalid_argument("instance must have at least one spin");
    if (instance.has_fields()) throw std::invalid_argument("absorb fields before spectral analysis");
    if (options.method == EigMethod::power) return power_spectrum(instance, options);
    return eig_sym(instance.coupling_matrix(), options);
}

SpectralSummary eig_sym(const Matrix& symmetric, const EigOptions& options) {
    if (symmetric.rows() != symmetric.cols() || symmetric.rows() < 1)
        throw std::invalid_argument("matrix must be square and non-empty");
    switch (options.method) {
        case EigMethod::jacobi: return dense_spectrum(symmetric, options, true);
        case EigMethod::householder: return dense_spectrum(symmetric, options, false);
        case EigMethod::automatic:
            return dense_spectrum(symmetric, options, symmetric.rows() <= options.jacobi_limit);
        case EigMethod::power: break;
    }
    throw std::invalid_argument("power iteration needs an instance, not a dense matrix");
}

std::optional<Vector> circulant_first_row(const IsingInstance& instance) {
    const int n = instance.size();
    const Adjacency& adj = instance.adjacency();
    Vector c = Vector::Zero(n);
    for (int a = adj.offsets[0]; a < adj.offsets[1]; ++a) c(adj.neighbors[a]) = adj.weights[a];
    std::size_t expected = 0;
    for (int d = 1; d < n; ++d) {
        if (c(d) != c(n - d)) return std::nullopt;
        if (c(d) != 0.0) ++expected;
    }
    // Each nonzero offset d < n/2 contributes n edges split across the pair (d, n-d); offset n/2 contributes n/2.
    if (expected * static_cast<std::size_t>(n) != 2 * instance.edge_count()) return std::nullopt;
    for (const Edge& e : instance.edges())
        if (e.w != c((e.j - e.i) % n)) return std::nullopt;
    return c;
}

SpectralSummary circulant_spectrum(const Vector& first_row, bool top_only) {
    const int n = static_cast<int>(first_row.size());
    if (n < 1) throw std::invalid_argument("first row must be non-empty");
    for (int d = 1; d < n; ++d)
        if (first_row(d) != first_row(n - d)) throw std::invalid_argument("first row is not symmetric");

    std::vector<double> cos_table(static_cast<std::size_t>(n)), sin_table(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) cos_table[r] = std::cos(2.0 * kPi * r / n);
    std::vector<int> support;
    for (int d = 1; d < n; ++d)
        if (first_row(d) != 0.0) support.push_back(d);

    // Column descriptors: frequency m and kind (0 = cos / constant / alternating, 1 = sin).
    struct Column {
        double lambda;
        int m;
        int kind;
    };
    std::vector<Column> columns;
    columns.reserve(static_cast<std::size_t>(n));
    for (int m = 0; 2 * m <= n; ++m) {
        double lambda = first_row(0);
        for (int d : support)
            lambda += first_row(d) * cos_table[static_cast<std::size_t>((static_cast<long long>(d) * m) % n)];
        columns.push_back({lambda, m, 0});
        if (m != 0 && 2 * m != n) columns.push_back({lambda, m, 1});
    }
    std::stable_sort(columns.begin(), columns.end(), [](const Column& a, const Column& b) {
        return a.lambda > b.lambda;
    });

    SpectralSummary out;
    out.eigenvalues.resize(n);
    for (int k = 0; k < n; ++k) out.eigenvalues(k) = columns[static_cast<std::size_t>(k)].lambda;
    out.top_multiplicity = count_top(out.eigenvalues);
    const int built = top_only ? out.top_multiplicity : n;
    out.complete = built == n;

    const double phase = 0.5 * (std::sqrt(5.0) - 1.0) * kPi / n;
    for (int r = 0; r < n; ++r) {
        cos_table[r] = std::cos(2.0 * kPi * r / n + phase);
        sin_table[r] = std::sin(2.0 * kPi * r / n + phase);
    }
    const double pair_scale = std::sqrt(2.0 / n);
    const double unit_scale = 1.0 / std::sqrt(static_cast<double>(n));
    out.eigenvectors.resize(n, built);
    for (int k = 0; k < built; ++k) {
        const Column& col = columns[static_cast<std::size_t>(k)];
        auto v = out.eigenvectors.col(k);
        if (col.m == 0) {
            v.setConstant(unit_scale);
        } else if (2 * col.m == n) {
            for (int j = 0; j < n; ++j) v(j) = (j % 2 == 0 ? unit_scale : -unit_scale);
        } else {
            const auto& table = col.kind == 0 ? cos_table : sin_table;
            for (int j = 0; j < n; ++j)
                v(j) = pair_scale * table[static_cast<std::size_t>((static_cast<long long>(col.m) * j) % n)];
        }
    }
    return out;
}

OscVerdict osc_check(const IsingInstance& instance, double ground_energy, const OscOptions& options) {
    const bool absorb = instance.has_fields();
    const IsingInstance work = absorb ? absorb_fields(instance) : IsingInstance();
    const IsingInstance& target = absorb ? work : instance;

    SpectralSummary summary;
    std::optional<Vector> row;
    if (options.circulant_fast_path) row = circulant_first_row(target);
    if (row) {
        summary = circulant_spectrum(*row, true);
    } else {
        EigOptions eig = options.eig;
        if (eig.method == EigMethod::power) eig.power_count = std::max(eig.power_count, 1);
        summary = eig_sym(target, eig);
    }

    if (!absorb) return osc_check(instance, summary, ground_energy);

    OscVerdict out;
    out.fields_absorbed = true;
    out.top_multiplicity = summary.top_multiplicity;
    out.degenerate = summary.top_multiplicity > 1;
    out.lambda_max = summary.lambda_max();
    const double tol = 1e-9 * std::max(1.0, std::abs(ground_energy));
    const int count = std::min(summary.top_multiplicity, summary.vector_count());
    for (int k = 0; k < count; ++k) {
        const auto col = summary.eigenvectors.col(k);
        const double orient = col(0) >= 0 ? 1.0 : -1.0;
        std::vector<int> s(static_cast<std::size_t>(instance.size()));
        for (int i = 0; i < instance.size(); ++i) s[static_cast<std::size_t>(i)] = orient * col(i + 1) >= 0 ? 1 : -1;
        SpinConfig pattern(std::move(s));
        const double e = energy(instance, pattern);
        if (k == 0 || e < out.e_lambda_energy) {
            out.e_lambda_energy = e;
            out.candidate = pattern;
        }
        if (!out.matched_vector_index && std::abs(e - ground_energy) <= tol) out.matched_vector_index = k;
    }
    if (out.e_lambda_energy < ground_energy - tol)
        throw std::invalid_argument("an eigenvector pattern lies below the supplied ground energy");
    out.is_simple = out.matched_vector_index.has_value();
    return out;
}

OscVerdict osc_check(const IsingInstance& instance, const SpectralSummary& summary, double ground_energy) {
    if (instance.has_fields()) throw std::invalid_argument("precomputed spectra need a zero-field instance");
    if (summary.eigenvectors.rows() != instance.size() || summary.vector_count() < 1)
        throw std::invalid_argument("spectrum does not match the instance");
    OscVerdict out;
    out.top_multiplicity = summary.top_multiplicity;
    out.degenerate = summary.top_multiplicity > 1;
    out.lambda_max = summary.lambda_max();
    const double tol = 1e-9 * std::max(1.0, std::abs(ground_energy));
    const int count = std::min(summary.top_multiplicity, summary.vector_count());
    for (int k = 0; k < count; ++k) {
        SpinConfig pattern = SpinConfig::from_signs(summary.eigenvectors.col(k));
        const double e = energy(instance, pattern);
        if (k == 0 || e < out.e_lambda_energy) {
            out.e_lambda_energy = e;
            out.candidate = pattern;
        }
        if (!out.matched_vector_index && std::abs(e - ground_energy) <= tol) out.matched_vector_index = k;
    }
    if (out.e_lambda_energy < ground_energy - tol)
        throw std::invalid_argument("an eigenvector pattern lies below the supplied ground energy");
    out.is_simple = out.matched_vector_index.has_value();
    return out;
}

nlohmann::json verdict_to_json(const OscVerdict& verdict) {
    return {{"E_lambda", verdict.e_lambda_energy},
            {"is_simple", verdict.is_simple},
            {"degenerate", verdict.degenerate},
            {"top_multiplicity", verdict.top_multiplicity}};
}

double projected_eigvec_energy(const IsingInstance& instance, const SpectralSummary& summary, int index) {
    if (index < 0 || index >= summary.vector_count())
        throw std::out_of_range("eigenvector index " + std::to_string(index) + " not computed");
    if (summary.eigenvectors.rows() != instance.size()) throw std::invalid_argument("spectrum does not match the instance");
    return sign_energy(instance, summary.eigenvectors.col(index));
}

StateDecomposition state_decompose(const IsingInstance& instance, const Eigen::Ref<const Vector>& v,
                                   const SpectralSummary& summary, double tau, double x0) {
    if (v.size() != instance.size() || summary.eigenvectors.rows() != instance.size())
        throw std::invalid_argument("amplitude vector, spectrum, and instance sizes differ");
    StateDecomposition out;
    out.gammas = summary.eigenvectors.transpose() * v;
    const Vector q = v - summary.eigenvectors * out.gammas;
    out.null_component_norm = q.norm();
    const Eigen::Index k = out.gammas.size();
    out.interaction_energy = -0.5 * (summary.eigenvalues.head(k).array() * out.gammas.array().square()).sum();
    double penalty = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) penalty += inverse_activation_integral(v(j), x0);
    out.reconstructed_energy = out.interaction_energy + penalty / tau;
    return out;
}

}  // namespace osc
