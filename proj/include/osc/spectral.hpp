#ifndef OSC_SPECTRAL_HPP
#define OSC_SPECTRAL_HPP

#include <cstdint>
#include <optional>

#include "osc/core.hpp"

namespace osc {

/// Eigenpairs of a symmetric coupling matrix, sorted by descending eigenvalue.
struct SpectralSummary {
    Vector eigenvalues;
    Matrix eigenvectors;        // column i pairs with eigenvalues(i); may hold fewer columns than eigenvalues
    int top_multiplicity = 0;   // eigenvalues within degeneracy_tolerance(lambda_max) of lambda_max
    bool complete = false;      // every eigenvalue and eigenvector present

    double lambda_max() const { return eigenvalues(0); }
    int vector_count() const { return static_cast<int>(eigenvectors.cols()); }
};

enum class EigMethod {
    automatic,    // jacobi up to jacobi_limit, householder above
    jacobi,       // cyclic Jacobi rotations, full spectrum
    householder,  // tridiagonal reduction + implicit QR (Eigen), full spectrum
    power         // shifted power iteration with deflation, top `power_count` pairs
};

struct EigOptions {
    EigMethod method = EigMethod::automatic;
    int jacobi_limit = 128;
    int jacobi_max_sweeps = 60;
    int power_count = 1;
    int power_max_iters = 200000;
    double power_tol = 1e-10;
    std::uint64_t power_seed = 0;
};

/// Absolute tolerance deciding that two eigenvalues near `lambda` coincide: 1e-9 max(1, |lambda|).
double degeneracy_tolerance(double lambda);

/// Number of leading entries of a descending sequence within degeneracy_tolerance of the first.
int count_top(const Vector& descending);

/// Spectrum of the coupling matrix. Throws std::invalid_argument for instances with fields
/// (absorb them first) and std::runtime_error when the iteration does not converge.
SpectralSummary eig_sym(const IsingInstance& instance, const EigOptions& options = {});

/// Spectrum of a dense symmetric matrix (lower triangle used). Power iteration is not offered here.
SpectralSummary eig_sym(const Matrix& symmetric, const EigOptions& options = {});

/// First row c of the coupling matrix when it is circulant (J_ij = c[(j - i) mod n]).
std::optional<Vector> circulant_first_row(const IsingInstance& instance);

/// Spectrum of the symmetric circulant with first row c: lambda_m = sum_j c_j cos(2 pi j m / N).
/// Eigenvectors are the constant vector, the alternating vector (even N), and for each pair
/// m, N - m the columns sqrt(2/N) cos(2 pi m j / N + phi), sqrt(2/N) sin(2 pi m j / N + phi).
/// The small phase phi keeps every entry away from zero so sign patterns are unambiguous.
/// With top_only, only the top eigenspace columns are built. Throws on an asymmetric row.
SpectralSummary circulant_spectrum(const Vector& first_row, bool top_only = false);

struct OscOptions {
    EigOptions eig;
    bool circulant_fast_path = true;  // use circulant_spectrum when the coupling matrix is circulant
};

struct OscVerdict {
    double e_lambda_energy = 0.0;         // lowest energy among top-eigenspace sign patterns
    SpinConfig candidate;                 // the pattern attaining it
    bool is_simple = false;
    bool degenerate = false;
    int top_multiplicity = 0;
    std::optional<int> matched_vector_index;  // top-eigenspace column whose pattern is a ground state
    double lambda_max = 0.0;
    bool fields_absorbed = false;
};

/// Optimisation simplicity check: is a ground state among the sign patterns of the top
/// eigenspace basis? Fields are absorbed into an auxiliary spin first; patterns are flipped
/// so that spin reads +1, then it is dropped. Throws std::invalid_argument when some pattern
/// lies below ground_energy (the supplied value cannot be the ground energy).
OscVerdict osc_check(const IsingInstance& instance, double ground_energy, const OscOptions& options = {});

/// Same check against a precomputed spectrum of `instance` (zero fields required).
OscVerdict osc_check(const IsingInstance& instance, const SpectralSummary& summary, double ground_energy);

/// {"E_lambda", "is_simple", "degenerate", "top_multiplicity"}.
nlohmann::json verdict_to_json(const OscVerdict& verdict);

/// energy(instance, sign(e_i)). Throws std::out_of_range for a missing column.
double projected_eigvec_energy(const IsingInstance& instance, const SpectralSummary& summary, int index);

struct StateDecomposition {
    Vector gammas;               // <v, e_i>
    double null_component_norm = 0.0;  // |v - sum gamma_i e_i|
    double reconstructed_energy = 0.0; // -1/2 sum lambda_i gamma_i^2 + (1/tau) sum F(v_j)
    double interaction_energy = 0.0;   // first term alone
};

/// Expansion of an amplitude vector in the eigenbasis and the matching Lyapunov energy.
/// The penalty term needs |v_j| < 1.
StateDecomposition state_decompose(const IsingInstance& instance, const Eigen::Ref<const Vector>& v,
                                   const SpectralSummary& summary, double tau = 1.0, double x0 = 3.0);

}  // namespace osc

#endif  // OSC_SPECTRAL_HPP
