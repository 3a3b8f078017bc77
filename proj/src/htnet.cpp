#include "osc/htnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "osc/energy.hpp"
#include "osc/generators.hpp"
#include "osc/rng.hpp"

namespace osc {

namespace {

constexpr double kUnitBelow = 1.0 - 0x1.0p-53;

Vector drive_vector(const IsingInstance& instance, const HTParams& params) {
    Vector drive = Vector::Constant(instance.size(), params.bias);
    if (instance.fields().size() == instance.size()) drive += instance.fields();
    return drive;
}

// out = J v using the adjacency rows.
void couple(const Adjacency& adj, const Vector& v, Vector& out) {
    const int n = static_cast<int>(adj.offsets.size()) - 1;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int a = adj.offsets[i]; a < adj.offsets[i + 1]; ++a) acc += adj.weights[a] * v(adj.neighbors[a]);
        out(i) = acc;
    }
}

void activate(const Vector& x, Vector& v, double x0) {
    for (Eigen::Index i = 0; i < x.size(); ++i) v(i) = activation(x(i), x0);
}

// Writes the residual -x/tau + J v + I into `out` and returns its sup-norm.
double residual_into(const Adjacency& adj, const Vector& drive, const HTParams& p, const Vector& x, const Vector& v,
                     Vector& out) {
    couple(adj, v, out);
    double sup = 0.0;
    const double inv_tau = 1.0 / p.tau;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double r = -x(i) * inv_tau + out(i) + drive(i);
        out(i) = r;
        sup = std::max(sup, std::abs(r));
    }
    return sup;
}

double ground_tolerance(double ground_energy) { return 1e-9 * std::max(1.0, std::abs(ground_energy)); }

// Flips spins whose activation sign changed and updates the energy incrementally.
void sync_spins(const IsingInstance& instance, const Vector& v, std::vector<int>& spins, double& energy) {
    const Adjacency& adj = instance.adjacency();
    const Vector& h = instance.fields();
    const bool fields = h.size() == instance.size();
    for (int i = 0; i < instance.size(); ++i) {
        const int s = v(i) >= 0 ? 1 : -1;
        if (s == spins[i]) continue;
        double local = fields ? h(i) : 0.0;
        for (int a = adj.offsets[i]; a < adj.offsets[i + 1]; ++a) local += adj.weights[a] * spins[adj.neighbors[a]];
        energy += 2.0 * spins[i] * local;
        spins[i] = s;
    }
}

}  // namespace

HTParams HTParams::standard(int max_iters) {
    HTParams p;
    p.max_iters = max_iters;
    p.fixpoint_tol = 0.0;
    return p;
}

void HTParams::validate() const {
    auto bad = [](const std::string& what) { throw std::invalid_argument("HTParams: " + what); };
    if (!(dt > 0) || !std::isfinite(dt)) bad("dt must be positive");
    if (!(tau > 0) || !std::isfinite(tau)) bad("tau must be positive");
    if (!(x0 > 0) || !std::isfinite(x0)) bad("x0 must be positive");
    if (!std::isfinite(bias)) bad("bias must be finite");
    if (max_iters < 0) bad("max_iters must be non-negative");
    if (!(fixpoint_tol >= 0)) bad("fixpoint_tol must be non-negative");
    if (!(init_amplitude >= 0) || !std::isfinite(init_amplitude)) bad("init_amplitude must be non-negative");
    if (record_every < 0) bad("record_every must be non-negative");
}

double inverse_activation_integral(double u, double x0) {
    if (!(std::abs(u) < 1.0)) throw std::domain_error("activation value must lie in (-1, 1)");
    // ln(1 - u^2) as ln(1 - |u|) + ln(1 + |u|): 1 - |u| is exact near saturation, u * u is not
    const double a = std::abs(u);
    return x0 * (u * std::atanh(u) + 0.5 * (std::log1p(-a) + std::log1p(a)));
}

double activation(double x, double x0) { return std::clamp(std::tanh(x / x0), -kUnitBelow, kUnitBelow); }

HTState ht_initial_state(int n, const HTParams& params, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    HTState s{Vector(n), Vector(n)};
    for (int i = 0; i < n; ++i) s.x(i) = params.init_amplitude * (2.0 * uniform01(rng) - 1.0);
    activate(s.x, s.v, params.x0);
    return s;
}

Vector ht_residual(const IsingInstance& instance, const HTState& state, const HTParams& params) {
    if (state.x.size() != instance.size() || state.v.size() != instance.size())
        throw std::invalid_argument("state size differs from instance size");
    Vector jv(instance.size());
    couple(instance.adjacency(), state.v, jv);
    return -state.x / params.tau + jv + drive_vector(instance, params);
}

HTState ht_step(const IsingInstance& instance, const HTState& state, const HTParams& params) {
    params.validate();
    HTState next = state;
    next.x += params.dt * ht_residual(instance, state, params);
    if (!next.x.allFinite()) throw std::runtime_error("Hopfield-Tank state diverged");
    activate(next.x, next.v, params.x0);
    return next;
}

double lyapunov(const IsingInstance& instance, const Eigen::Ref<const Vector>& v, const HTParams& params) {
    if (v.size() != instance.size()) throw std::invalid_argument("activation vector size differs from instance size");
    // Neumaier summation: near saturation successive energies differ by less than the
    // rounding error of a plain sum
    double sum = 0.0, carry = 0.0;
    auto add = [&](double term) {
        const double t = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    };
    for (const Edge& edge : instance.edges()) add(-edge.w * v(edge.i) * v(edge.j));
    const Vector drive = drive_vector(instance, params);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        add(-drive(i) * v(i));
        add(inverse_activation_integral(v(i), params.x0) / params.tau);
    }
    return sum + carry;
}

HTRun ht_run(const IsingInstance& instance, const HTParams& params, std::uint64_t seed,
             std::optional<double> ground_energy) {
    params.validate();
    const int n = instance.size();
    const Adjacency& adj = instance.adjacency();
    const Vector drive = drive_vector(instance, params);
    HTState st = ht_initial_state(n, params, seed);
    Vector scratch(n);
    HTTrace trace;

    auto record = [&](int it) {
        const double e = sign_energy(instance, st.v);
        trace.iterations.push_back(it);
        trace.energy_history.push_back(e);
        if (ground_energy && *ground_energy != 0.0) trace.proximity_history.push_back(e / *ground_energy);
    };
    if (params.record_every > 0) record(0);

    int it = 0;
    while (it < params.max_iters) {
        const double sup = residual_into(adj, drive, params, st.x, st.v, scratch);
        if (params.fixpoint_tol > 0 && sup < params.fixpoint_tol) {
            trace.converged = true;
            break;
        }
        st.x += params.dt * scratch;
        if (!st.x.allFinite()) throw std::runtime_error("Hopfield-Tank state diverged");
        activate(st.x, st.v, params.x0);
        ++it;
        if (params.record_every > 0 && it % params.record_every == 0) record(it);
    }
    if (!trace.converged && params.fixpoint_tol > 0 && it == params.max_iters) {
        trace.converged = residual_into(adj, drive, params, st.x, st.v, scratch) < params.fixpoint_tol;
    }
    if (params.record_every > 0 && (trace.iterations.empty() || trace.iterations.back() != it)) record(it);
    trace.iterations_run = it;
    trace.x = st.x;
    trace.v = st.v;

    HTRun out;
    out.spins = SpinConfig::from_signs(st.v);
    out.energy = energy(instance, out.spins);
    out.trace = std::move(trace);
    return out;
}

HTParams budget_only(const HTParams& params) {
    HTParams p = params;
    p.fixpoint_tol = 0.0;
    p.record_every = 0;
    return p;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t index) { return mix64(master_seed, index); }

double ground_state_probability(const IsingInstance& instance, double ground_energy, int runs, const HTParams& params,
                                std::uint64_t seed) {
    if (runs <= 0) throw std::invalid_argument("runs must be positive");
    HTParams p = params;
    p.record_every = 0;
    const double tol = ground_tolerance(ground_energy);
    int hits = 0;
    for (int r = 0; r < runs; ++r) {
        const HTRun run = ht_run(instance, p, run_seed(seed, static_cast<std::uint64_t>(r)));
        if (std::abs(run.energy - ground_energy) <= tol) ++hits;
    }
    return static_cast<double>(hits) / runs;
}

GroundStateProfile::GroundStateProfile(const IsingInstance& instance, double ground_energy, int runs,
                                       const HTParams& params, std::uint64_t seed)
    : instance_(&instance),
      ground_energy_(ground_energy),
      params_(params),
      drive_(drive_vector(instance, params)),
      tolerance_(ground_tolerance(ground_energy)) {
    params_.validate();
    if (runs <= 0) throw std::invalid_argument("runs must be positive");
    runs_.resize(static_cast<std::size_t>(runs));
    for (int r = 0; r < runs; ++r) {
        Run& run = runs_[static_cast<std::size_t>(r)];
        HTState st = ht_initial_state(instance.size(), params_, run_seed(seed, static_cast<std::uint64_t>(r)));
        run.x = std::move(st.x);
        run.v = std::move(st.v);
        const SpinConfig s = SpinConfig::from_signs(run.v);
        run.spins = s.values();
        run.energy = energy(instance, s);
        run.initially_ground = std::abs(run.energy - ground_energy_) <= tolerance_;
    }
}

bool GroundStateProfile::in_ground(const Run& run, int budget) const {
    const auto flips = std::upper_bound(run.toggles.begin(), run.toggles.end(), budget) - run.toggles.begin();
    return run.initially_ground != (flips % 2 == 1);
}

void GroundStateProfile::advance_to(int budget) {
    if (budget <= simulated_) return;
    const Adjacency& adj = instance_->adjacency();
    Vector scratch(instance_->size());
    for (Run& run : runs_) {
        bool ground = in_ground(run, simulated_);
        for (int it = simulated_ + 1; it <= budget && !run.frozen; ++it) {
            const double sup = residual_into(adj, drive_, params_, run.x, run.v, scratch);
            if (params_.fixpoint_tol > 0 && sup < params_.fixpoint_tol) {
                run.frozen = true;
                break;
            }
            run.x += params_.dt * scratch;
            if (!run.x.allFinite()) throw std::runtime_error("Hopfield-Tank state diverged");
            activate(run.x, run.v, params_.x0);
            sync_spins(*instance_, run.v, run.spins, run.energy);
            bool now = std::abs(run.energy - ground_energy_) <= 1e3 * tolerance_;
            if (now) {
                // Re-anchor the running energy so rounding drift cannot fake a hit.
                SpinConfig s(run.spins);
                run.energy = energy(*instance_, s);
                now = std::abs(run.energy - ground_energy_) <= tolerance_;
            }
            if (now != ground) {
                run.toggles.push_back(it);
                ground = now;
            }
        }
    }
    simulated_ = budget;
}

double GroundStateProfile::probability(int budget) {
    if (budget < 0) throw std::invalid_argument("budget must be non-negative");
    advance_to(budget);
    int hits = 0;
    for (const Run& run : runs_) hits += in_ground(run, budget) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(runs_.size());
}

IterationSearch iterations_for_probability(GroundStateProfile& profile, double p_lo, double p_hi,
                                           const IterationSearchOptions& options) {
    if (!(p_lo >= 0 && p_lo <= p_hi && p_hi <= 1)) throw std::invalid_argument("band must satisfy 0 <= lo <= hi <= 1");
    if (options.initial < 1 || options.ceiling < options.initial)
        throw std::invalid_argument("search needs 1 <= initial <= ceiling");

    IterationSearch out;
    auto eval = [&](int t) {
        ++out.evaluations;
        return profile.probability(t);
    };
    auto done = [&](int t, double prob) {
        out.n_iter = t;
        out.p_measured = prob;
        out.reached = true;
        out.simulated = profile.simulated();
        return out;
    };

    int t = options.initial;
    double prob = eval(t);
    if (prob >= p_lo && prob <= p_hi) return done(t, prob);

    int below = 0;   // largest budget known to give prob < p_lo
    int above = 0;   // smallest budget known to give prob > p_hi
    if (prob < p_lo) {
        below = t;
        while (true) {
            if (t >= options.ceiling) {
                out.n_iter = t;
                out.p_measured = prob;
                out.simulated = profile.simulated();
                return out;
            }
            t = static_cast<int>(std::min<long long>(2LL * t, options.ceiling));
            prob = eval(t);
            if (prob >= p_lo && prob <= p_hi) return done(t, prob);
            if (prob > p_hi) {
                above = t;
                break;
            }
            below = t;
        }
    } else {
        above = t;
        while (prob > p_hi) {
            if (t == 0) {
                out.n_iter = 0;
                out.p_measured = prob;
                out.simulated = profile.simulated();
                return out;
            }
            t /= 2;
            prob = eval(t);
            if (prob >= p_lo && prob <= p_hi) return done(t, prob);
            if (prob > p_hi) above = t;
        }
        below = t;
    }

    while (above - below > 1) {
        const int mid = below + (above - below) / 2;
        prob = eval(mid);
        if (prob >= p_lo && prob <= p_hi) return done(mid, prob);
        if (prob < p_lo) below = mid;
        else above = mid;
    }
    // Adjacent budgets straddle the band: the probability jumps over it.
    out.n_iter = above;
    out.p_measured = profile.probability(above);
    out.simulated = profile.simulated();
    return out;
}

IterationSearch iterations_for_probability(const IsingInstance& instance, double ground_energy, double p_lo,
                                           double p_hi, int runs, const HTParams& params, std::uint64_t seed,
                                           const IterationSearchOptions& options) {
    GroundStateProfile profile(instance, ground_energy, runs, budget_only(params), seed);
    return iterations_for_probability(profile, p_lo, p_hi, options);
}

IterationSearch iterations_for_probability(int mobius_size, double p_lo, double p_hi, int runs,
                                           const HTParams& params, std::uint64_t seed,
                                           const IterationSearchOptions& options) {
    if (mobius_size < 8 || mobius_size % 4 != 0)
        throw std::invalid_argument("Mobius size must be a multiple of 4 and at least 8");
    const int n_half = mobius_size / 2;
    const IsingInstance ladder = gen_mobius_ladder(n_half);
    return iterations_for_probability(ladder, -(3.0 * n_half - 4.0), p_lo, p_hi, runs, params, seed, options);
}

}  // namespace osc
