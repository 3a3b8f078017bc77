#ifndef OSC_EXACT_HPP
#define OSC_EXACT_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "osc/core.hpp"

namespace osc {

enum class SolveStatus { optimal, time_limit, budget };

std::string to_string(SolveStatus status);

struct GapSample {
    double elapsed_s = 0.0;
    double gap = 0.0;
    double best_energy = 0.0;
    double lower_bound = 0.0;
};

struct SolveReport {
    double best_energy = 0.0;
    SpinConfig best_config;
    double lower_bound = 0.0;
    double gap = 0.0;
    bool gap_infinite = false;  // best_energy == 0 with a positive numerator
    SolveStatus status = SolveStatus::optimal;
    std::uint64_t nodes_explored = 0;
    double elapsed_s = 0.0;
    std::optional<double> time_to_zero_gap_s;
    std::optional<std::uint64_t> ground_degeneracy;
    std::vector<GapSample> gap_trace;
};

/// Calls visit(bit) for each of the 2^bits - 1 single-bit flips of the reflected binary Gray
/// code, starting from all bits clear.
template <typename Visit>
void gray_code_walk(int bits, Visit&& visit) {
    const std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t k = 1; k < total; ++k) visit(std::countr_zero(k));
}

inline constexpr int kBruteForceMaxSpins = 32;

/// Exhaustive minimum over every state, fixing spin 0 to +1 when the fields vanish. With
/// count_degeneracy the number of minimisers over all 2^n states is reported. Throws
/// std::invalid_argument above kBruteForceMaxSpins spins.
SolveReport brute_force(const IsingInstance& instance, bool count_degeneracy = false);

/// Gap (best - lower) / |best|; 0 when best == lower; +infinity when best == 0 < best - lower.
/// Throws std::invalid_argument when lower > best beyond rounding.
double optimality_gap(double best_energy, double lower_bound);

/// One bound evaluation inside branch_and_bound, exposed for admissibility audits.
struct NodeEvent {
    const std::vector<int>* fixed_vars;    // spins fixed along the path, in branching order
    const std::vector<int>* fixed_values;  // their values
    double bound = 0.0;
    double incumbent = 0.0;
    bool pruned = false;
};

struct BnbOptions {
    double time_limit_s = std::numeric_limits<double>::infinity();
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
    double target_gap = 0.0;
    bool spectral_root_bound = true;
    bool heuristic_incumbent = true;  // seed with sign(e_max) and one Hopfield-Tank run
    bool cycle_bound = true;          // strengthen the interval bound with frustrated-cycle packing
    std::uint64_t seed = 0;           // Hopfield-Tank run seed
    std::function<void(const NodeEvent&)> audit;
};

/// Depth-first branch and bound over spins in decreasing weighted-degree order (ties go to
/// the spin with most weight towards spins already ordered, then to the lower index).
///
/// The node bound is E(fixed) - sum_free |b_i| - sum_{free pairs} |w| + 2 P, where b_i is the
/// field acting on free spin i from the fixed spins and P is the weight of a packing of
/// unbalanced cycles in the free graph with every fixed spin merged into one reference spin.
SolveReport branch_and_bound(const IsingInstance& instance, const BnbOptions& options = {});

nlohmann::ordered_json report_to_json(const SolveReport& report);

/// CSV with header elapsed_s,gap,best_energy,lower_bound.
std::string gap_trace_csv(const SolveReport& report);

}  // namespace osc

#endif  // OSC_EXACT_HPP
