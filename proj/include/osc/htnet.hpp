#ifndef OSC_HTNET_HPP
#define OSC_HTNET_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "osc/core.hpp"

namespace osc {

/// Hopfield-Tank integration parameters. Activation is g(x) = tanh(x / x0).
struct HTParams {
    double dt = 0.9;
    double tau = 1.0;
    double x0 = 3.0;
    double bias = 0.0;            // added to every spin on top of the instance fields
    int max_iters = 3000;
    double fixpoint_tol = 1e-6;   // stop when the residual sup-norm drops below this; 0 = budget only
    double init_amplitude = 0.25; // x_i(0) ~ U[-a, a]
    int record_every = 0;         // trace sampling period in iterations; 0 keeps only the final state

    /// dt = 0.9, tau = 1, x0 = 3, zero bias, fixed iteration budget.
    static HTParams standard(int max_iters);

    void validate() const;
};

struct HTState {
    Vector x;
    Vector v;
};

struct HTTrace {
    Vector x;
    Vector v;
    std::vector<int> iterations;          // sampled iteration indices
    std::vector<double> energy_history;   // Ising energy of sign(v) at those iterations
    std::vector<double> proximity_history;  // energy / ground energy, when known
    int iterations_run = 0;
    bool converged = false;
};

struct HTRun {
    SpinConfig spins;
    double energy = 0.0;
    HTTrace trace;
};

/// Closed form of the integral of g^{-1} from 0 to u for g = tanh(x / x0):
/// x0 [u atanh(u) + ln(1 - u^2) / 2].
double inverse_activation_integral(double u, double x0);

/// Activation with the result kept strictly inside (-1, 1).
double activation(double x, double x0);

/// x ~ U[-init_amplitude, init_amplitude], v = g(x).
HTState ht_initial_state(int n, const HTParams& params, std::uint64_t seed);

/// One explicit Euler step x <- x + dt (-x/tau + J v + I), v <- g(x). Throws std::runtime_error
/// when the state stops being finite.
HTState ht_step(const IsingInstance& instance, const HTState& state, const HTParams& params);

/// Residual -x/tau + J v + I of the continuous dynamics.
Vector ht_residual(const IsingInstance& instance, const HTState& state, const HTParams& params);

/// E(v) = -sum_edges w v_i v_j - sum_i I_i v_i + (1/tau) sum_i F(v_i). Requires |v_i| < 1.
double lyapunov(const IsingInstance& instance, const Eigen::Ref<const Vector>& v, const HTParams& params);

/// Integrates from a seeded random start until the fixed-point test passes or the budget runs out,
/// then reads spins as sign(v).
HTRun ht_run(const IsingInstance& instance, const HTParams& params, std::uint64_t seed,
             std::optional<double> ground_energy = std::nullopt);

/// Copy of `params` that always runs the full budget and records no trace.
HTParams budget_only(const HTParams& params);

/// Seed of run `index` under a master seed.
std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t index);

/// Share of `runs` independent ht_run calls (seeds run_seed(seed, r)) ending at ground_energy.
double ground_state_probability(const IsingInstance& instance, double ground_energy, int runs, const HTParams& params,
                                std::uint64_t seed);

/// Ground-state probability as a function of the iteration budget for a fixed set of runs.
///
/// Each run is integrated once, lazily, and the budgets at which its read-out enters or leaves
/// the ground state are recorded, so probability(T) equals ground_state_probability with
/// max_iters = T for every T already simulated.
class GroundStateProfile {
public:
    GroundStateProfile(const IsingInstance& instance, double ground_energy, int runs, const HTParams& params,
                       std::uint64_t seed);

    double probability(int budget);
    int simulated() const { return simulated_; }
    int runs() const { return static_cast<int>(runs_.size()); }

private:
    struct Run {
        Vector x;
        Vector v;
        std::vector<int> spins;
        double energy = 0.0;
        bool frozen = false;           // fixed point reached
        bool initially_ground = false;
        std::vector<int> toggles;      // budgets where the ground indicator changes
    };

    void advance_to(int budget);
    bool in_ground(const Run& run, int budget) const;

    const IsingInstance* instance_;
    double ground_energy_;
    HTParams params_;
    Vector drive_;
    std::vector<Run> runs_;
    int simulated_ = 0;
    double tolerance_;
};

struct IterationSearch {
    int n_iter = 0;
    double p_measured = 0.0;
    bool reached = false;
    int evaluations = 0;
    int simulated = 0;  // largest budget integrated
};

struct IterationSearchOptions {
    int initial = 1;          // first budget tried
    int ceiling = 1 << 22;    // budgets beyond this are not tried
};

/// Budget whose measured ground-state probability lies in [p_lo, p_hi]: doubling from
/// `initial` until the probability reaches p_lo (or halving while it exceeds p_hi), then
/// bisection. Budget-only parameters are required (fixpoint_tol is ignored).
IterationSearch iterations_for_probability(const IsingInstance& instance, double ground_energy, double p_lo,
                                           double p_hi, int runs, const HTParams& params, std::uint64_t seed,
                                           const IterationSearchOptions& options = {});

/// Same search on an existing profile, so several bands can share one set of integrations.
/// The profile should be built with budget_only parameters.
IterationSearch iterations_for_probability(GroundStateProfile& profile, double p_lo, double p_hi,
                                           const IterationSearchOptions& options = {});

/// Mobius-ladder convenience: N must be a multiple of 4 so the ground energy -(3 N/2 - 4) is known.
IterationSearch iterations_for_probability(int mobius_size, double p_lo, double p_hi, int runs,
                                           const HTParams& params, std::uint64_t seed,
                                           const IterationSearchOptions& options = {});

}  // namespace osc

#endif  // OSC_HTNET_HPP
