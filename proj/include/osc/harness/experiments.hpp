#ifndef OSC_HARNESS_EXPERIMENTS_HPP
#define OSC_HARNESS_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "osc/exact.hpp"
#include "osc/generators.hpp"
#include "osc/harness/table.hpp"
#include "osc/htnet.hpp"
#include "osc/spectral.hpp"

namespace osc::harness {

enum class ExperimentId { scaling, rewire_sweep, connectivity_sweep, simple_fraction };

std::string to_string(ExperimentId id);
ExperimentId parse_experiment(const std::string& name);  // "scaling", "rewire-sweep", ...

/// instance_seed = mix64(master_seed, experiment code, point index, replicate index),
/// with experiment codes 1..4 in declaration order.
std::uint64_t instance_seed(std::uint64_t master_seed, ExperimentId id, std::uint64_t point, std::uint64_t replicate);

/// 64-bit digest of size, couplings and fields. Metadata is ignored.
std::uint64_t content_key(const IsingInstance& instance);

// ---- exact ground truth shared by the sweeps ----

struct CertifyOptions {
    int brute_force_first = 0;     // enumerate outright up to this many spins
    int brute_force_fallback = 0;  // enumerate when branch and bound stops short, up to this many spins
    BnbOptions solver;
};

struct Certified {
    bool certified = false;
    std::string method = "none";  // "brute_force", "branch_and_bound", "none"
    double ground_energy = 0.0;   // best known energy when not certified
    SpinConfig ground_config;
    bool bnb_ran = false;
    SolveStatus bnb_status = SolveStatus::optimal;
    std::uint64_t nodes = 0;
    double bnb_seconds = 0.0;
    double bnb_gap = 0.0;         // gap attained by branch and bound (0 when not run)
    std::optional<OscVerdict> verdict;  // only for certified instances
    double frustration = 0.0;     // share of frustrated edges in ground_config
};

/// Proves the ground energy of an instance, then runs the simplicity check against it.
Certified certify(const IsingInstance& instance, const CertifyOptions& options, std::uint64_t solver_seed);

// ---- experiment configurations ----

enum class CostMetric { nodes, seconds };

std::string to_string(CostMetric metric);
CostMetric parse_cost_metric(const std::string& name);

struct Band {
    double lo = 0.5;
    double hi = 0.55;
};

/// Iteration budget for a ground-state probability band on Mobius ladders.
struct ScalingConfig {
    std::vector<int> sizes = {200, 400, 600, 800, 1000, 1200, 1400, 1600, 1800, 2000};
    std::vector<Band> bands = {Band{}};
    int runs = 250;
    HTParams params = HTParams::standard(0);
    int initial = 1;                 // first budget of every doubling search
    int ceiling = 1 << 22;
    std::vector<int> fixed_budgets;  // optional p_gs at fixed budgets for every size
};

/// Solve cost of rewired Mobius ladders against the share of rewired edges.
struct RewireSweepConfig {
    std::vector<int> sizes = {60, 80, 100};
    std::vector<double> percents = {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    int graphs = 100;
    BnbOptions solver = [] {
        BnbOptions o;
        o.node_budget = 20'000'000;
        return o;
    }();
    CostMetric cost = CostMetric::nodes;
    bool random_baseline = true;  // also solve random 3-regular graphs of each size
};

/// Random unweighted k-regular circulants at fixed N.
struct ConnectivityConfig {
    int n = 30;
    std::vector<int> ks;  // empty: every feasible k from 2 to N - 1
    int instances = 25;
    BnbOptions solver = [] {
        BnbOptions o;
        o.node_budget = 1'000'000;
        return o;
    }();
    int brute_force_fallback = 30;
    CostMetric cost = CostMetric::nodes;
};

struct FractionPoint {
    std::string model;
    std::string dist;
    ModelSpec spec;
};

/// Share of simple instances per model and size.
struct SimpleFractionConfig {
    std::vector<FractionPoint> points;  // empty: default_fraction_points()
    int instances = 1000;
    int brute_force_max = 26;
    BnbOptions solver = [] {
        BnbOptions o;
        o.node_budget = 20'000'000;
        return o;
    }();
};

/// Gaussian and bimodal SK at N = 3 or 5 and 20..25, Mattis on complete graphs up to 40 spins,
/// unweighted tori 4x4, 4x6, 6x6, BF-Chimera 1x1 and 2x2, ladders with field up to 40 spins.
std::vector<FractionPoint> default_fraction_points();

/// Parses "model:dist:size" (size "RxC" for torus and chimera) into a point, e.g. "sk:gaussian:20",
/// "torus:unweighted:4x6", "mattis:bimodal:30", "chimera:bf:2x2", "ladder:field:12".
FractionPoint parse_fraction_point(const std::string& text);

using ExperimentParams = std::variant<ScalingConfig, RewireSweepConfig, ConnectivityConfig, SimpleFractionConfig>;

struct ExperimentConfig {
    std::optional<std::uint64_t> master_seed;  // mandatory
    int jobs = 1;
    bool details = false;  // keep one row per instance
    ExperimentParams params;

    ExperimentId id() const;
    /// Throws std::invalid_argument for a missing seed or out-of-range parameters.
    void validate() const;
};

struct ExperimentResult {
    std::string experiment;
    Table table;               // fixed schema per experiment, provenance columns last
    std::vector<Table> extra;  // fit lines, fixed-budget probabilities, baselines
    Table detail;              // per instance, only with details

    int flagged() const;
};

ExperimentResult exp_scaling(const ExperimentConfig& config);
ExperimentResult exp_rewire_sweep(const ExperimentConfig& config);
ExperimentResult exp_connectivity_sweep(const ExperimentConfig& config);
ExperimentResult exp_simple_fraction(const ExperimentConfig& config);

/// Dispatch on the parameter block.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the main table to `path` and every extra table (plus the detail table when present)
/// next to it as <stem>.<table name><extension>. SVG renders one plot per table kind.
/// Returns the written paths.
std::vector<std::filesystem::path> emit(const ExperimentResult& result, Format format,
                                        const std::filesystem::path& path);

}  // namespace osc::harness

#endif  // OSC_HARNESS_EXPERIMENTS_HPP
