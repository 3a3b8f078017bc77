#include "osc/harness/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "osc/energy.hpp"
#include "osc/harness/parallel.hpp"
#include "osc/harness/stats.hpp"
#include "osc/harness/svg.hpp"
#include "osc/rng.hpp"
#include "osc/version.hpp"

namespace osc::harness {

namespace {

std::uint64_t experiment_code(ExperimentId id) { return static_cast<std::uint64_t>(id) + 1; }

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::vector<Cell> provenance(std::uint64_t master, std::uint64_t seed) {
    return {master, seed, std::string(kCodeVersion)};
}

void append(std::vector<Cell>& row, std::vector<Cell> tail) {
    for (auto& c : tail) row.push_back(std::move(c));
}

const std::vector<std::string> kProvenanceColumns = {"master_seed", "instance_seed", "code_version"};

std::vector<std::string> with_provenance(std::vector<std::string> columns) {
    columns.insert(columns.end(), kProvenanceColumns.begin(), kProvenanceColumns.end());
    return columns;
}

Table detail_table() {
    return Table("detail", {"point", "replicate", "instance_seed", "label", "N", "ground_energy", "certified_by",
                            "bnb_status", "nodes", "bnb_seconds", "bnb_gap", "is_simple", "E_lambda",
                            "frustration"});
}

void add_detail(Table& detail, std::size_t point, int replicate, std::uint64_t seed, const std::string& label,
                int n, const Certified& c) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    detail.add_row({as_int(point), std::int64_t{replicate}, seed, label, std::int64_t{n}, c.ground_energy,
                    c.method, c.bnb_ran ? to_string(c.bnb_status) : std::string("-"), c.nodes,
                    c.bnb_seconds, c.bnb_gap,
                    c.verdict ? std::int64_t{c.verdict->is_simple ? 1 : 0} : std::int64_t{-1},
                    c.verdict ? c.verdict->e_lambda_energy : nan, c.certified ? c.frustration : nan},
                   !c.certified);
}

/// Certifies every instance, solving each distinct one once. Solver seeds come from the
/// instance content, so shared instances get identical results whichever replicate owns them.
std::vector<Certified> certify_all(const std::vector<IsingInstance>& instances, const CertifyOptions& options,
                                   int jobs, std::uint64_t master, ExperimentId id, std::size_t* distinct = nullptr) {
    std::vector<std::size_t> owner(instances.size());
    std::vector<std::size_t> unique;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_key;
    std::vector<std::uint64_t> keys(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        keys[i] = content_key(instances[i]);
        auto& bucket = by_key[keys[i]];
        std::size_t found = instances.size();
        for (std::size_t u : bucket)
            if (instances[u] == instances[i]) {
                found = u;
                break;
            }
        if (found == instances.size()) {
            bucket.push_back(i);
            unique.push_back(i);
            found = i;
        }
        owner[i] = found;
    }
    if (distinct) *distinct = unique.size();

    std::vector<Certified> solved(unique.size());
    parallel_for(unique.size(), jobs, [&](std::size_t u) {
        const std::size_t i = unique[u];
        solved[u] = certify(instances[i], options, mix64({master, experiment_code(id), keys[i]}));
    });
    std::unordered_map<std::size_t, std::size_t> slot;
    for (std::size_t u = 0; u < unique.size(); ++u) slot[unique[u]] = u;
    std::vector<Certified> out(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) out[i] = solved[slot[owner[i]]];
    return out;
}

double cost_of(const Certified& c, CostMetric metric) {
    return metric == CostMetric::nodes ? static_cast<double>(c.nodes) : c.bnb_seconds;
}

struct PointSummary {
    double median = 0, q1 = 0, q3 = 0, max = 0;
    double p_simple = std::numeric_limits<double>::quiet_NaN();
    double frustration = std::numeric_limits<double>::quiet_NaN();
    double gap_mean = 0;
    int certified = 0, unsolved = 0, censored = 0;
};

PointSummary summarise(const std::vector<Certified>& group, CostMetric metric) {
    PointSummary s;
    std::vector<double> costs, frus, gaps;
    int simple = 0;
    for (const Certified& c : group) {
        if (c.bnb_ran) {
            costs.push_back(cost_of(c, metric));
            gaps.push_back(c.bnb_gap);
            if (c.bnb_status != SolveStatus::optimal) ++s.censored;
        }
        if (!c.certified) {
            ++s.unsolved;
            continue;
        }
        ++s.certified;
        simple += c.verdict && c.verdict->is_simple ? 1 : 0;
        frus.push_back(c.frustration);
    }
    if (!costs.empty()) {
        s.median = median(costs);
        s.q1 = quantile(costs, 0.25);
        s.q3 = quantile(costs, 0.75);
        s.max = *std::max_element(costs.begin(), costs.end());
        s.gap_mean = mean(gaps);
    }
    if (s.certified > 0) {
        s.p_simple = static_cast<double>(simple) / s.certified;
        s.frustration = mean(frus);
    }
    return s;
}

bool circulant_feasible(int n, int k) {
    if (k < 2 || k >= n) return false;
    const int pool = (n + 1) / 2 - 1;  // offsets below N/2
    if (k % 2 == 0) return k / 2 <= pool;
    return n % 2 == 0 && (k - 1) / 2 <= pool;
}

std::string fraction_label(const FractionPoint& p, int n) { return p.model + "/" + p.dist + "/" + std::to_string(n); }

}  // namespace

// ---- names and seeds ----

std::string to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::scaling: return "scaling";
        case ExperimentId::rewire_sweep: return "rewire-sweep";
        case ExperimentId::connectivity_sweep: return "connectivity-sweep";
        case ExperimentId::simple_fraction: return "simple-fraction";
    }
    return "?";
}

ExperimentId parse_experiment(const std::string& name) {
    for (auto id : {ExperimentId::scaling, ExperimentId::rewire_sweep, ExperimentId::connectivity_sweep,
                    ExperimentId::simple_fraction})
        if (to_string(id) == name) return id;
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::uint64_t instance_seed(std::uint64_t master_seed, ExperimentId id, std::uint64_t point, std::uint64_t replicate) {
    return mix64({master_seed, experiment_code(id), point, replicate});
}

std::uint64_t content_key(const IsingInstance& instance) {
    std::uint64_t h = mix64({0x636f6e74656e74ULL, static_cast<std::uint64_t>(instance.size())});
    for (const Edge& e : instance.edges()) {
        h = splitmix64(h ^ ((static_cast<std::uint64_t>(e.i) << 32) | static_cast<std::uint32_t>(e.j)));
        h = splitmix64(h ^ std::bit_cast<std::uint64_t>(e.w));
    }
    for (Eigen::Index i = 0; i < instance.fields().size(); ++i)
        h = splitmix64(h ^ std::bit_cast<std::uint64_t>(instance.fields()(i)));
    return h;
}

std::string to_string(CostMetric metric) { return metric == CostMetric::nodes ? "nodes" : "seconds"; }

CostMetric parse_cost_metric(const std::string& name) {
    if (name == "nodes") return CostMetric::nodes;
    if (name == "seconds") return CostMetric::seconds;
    throw std::invalid_argument("unknown cost metric '" + name + "' (expected nodes or seconds)");
}

// ---- ground truth ----

Certified certify(const IsingInstance& instance, const CertifyOptions& options, std::uint64_t solver_seed) {
    Certified c;
    const int n = instance.size();
    auto take_brute = [&] {
        const SolveReport r = brute_force(instance);
        c.certified = true;
        c.method = "brute_force";
        c.ground_energy = r.best_energy;
        c.ground_config = r.best_config;
    };
    if (n <= options.brute_force_first && n <= kBruteForceMaxSpins) {
        take_brute();
    } else {
        BnbOptions o = options.solver;
        o.seed = solver_seed;
        const SolveReport r = branch_and_bound(instance, o);
        c.bnb_ran = true;
        c.bnb_status = r.status;
        c.nodes = r.nodes_explored;
        c.bnb_seconds = r.elapsed_s;
        c.bnb_gap = r.gap;
        c.ground_energy = r.best_energy;
        c.ground_config = r.best_config;
        if (r.status == SolveStatus::optimal) {
            c.certified = true;
            c.method = "branch_and_bound";
        } else if (n <= options.brute_force_fallback && n <= kBruteForceMaxSpins) {
            take_brute();
        }
    }
    if (c.certified) {
        c.verdict = osc_check(instance, c.ground_energy);
        c.frustration = frustration(instance, c.ground_config).fraction;
    }
    return c;
}

// ---- configuration ----

ExperimentId ExperimentConfig::id() const {
    return std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ScalingConfig>) return ExperimentId::scaling;
            else if constexpr (std::is_same_v<T, RewireSweepConfig>) return ExperimentId::rewire_sweep;
            else if constexpr (std::is_same_v<T, ConnectivityConfig>) return ExperimentId::connectivity_sweep;
            else return ExperimentId::simple_fraction;
        },
        params);
}

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(master_seed.has_value(), "a master seed is required");
    require(jobs >= 1, "jobs must be at least 1");
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ScalingConfig>) {
                require(!p.sizes.empty(), "scaling needs at least one size");
                for (int n : p.sizes) require(n >= 8 && n % 4 == 0, "scaling sizes must be multiples of 4, at least 8");
                for (const Band& b : p.bands)
                    require(b.lo > 0 && b.lo <= b.hi && b.hi <= 1, "bands must lie within (0, 1]");
                require(p.runs >= 1, "runs must be positive");
                require(p.initial >= 1 && p.ceiling >= p.initial, "search needs 1 <= initial <= ceiling");
                for (int t : p.fixed_budgets) require(t >= 0, "fixed budgets must be non-negative");
                p.params.validate();
            } else if constexpr (std::is_same_v<T, RewireSweepConfig>) {
                require(!p.sizes.empty() && !p.percents.empty(), "rewire sweep needs sizes and percents");
                for (int n : p.sizes) require(n >= 8 && n % 4 == 0, "rewire sizes must be multiples of 4, at least 8");
                for (double q : p.percents) require(q >= 0 && q <= 100, "percents must lie in [0, 100]");
                require(p.graphs >= 1, "graphs per point must be positive");
            } else if constexpr (std::is_same_v<T, ConnectivityConfig>) {
                require(p.n >= 3, "connectivity sweep needs N >= 3");
                for (int k : p.ks) require(circulant_feasible(p.n, k), "infeasible k=" + std::to_string(k));
                require(p.instances >= 1, "instances per k must be positive");
            } else {
                require(p.instances >= 1, "instances per point must be positive");
                require(p.brute_force_max <= kBruteForceMaxSpins, "brute force is capped at 32 spins");
            }
        },
        params);
}

int ExperimentResult::flagged() const {
    int count = table.flagged_count();
    for (const Table& t : extra) count += t.flagged_count();
    return count;
}

// ---- exp_scaling ----

ExperimentResult exp_scaling(const ExperimentConfig& config) {
    config.validate();
    const auto& cfg = std::get<ScalingConfig>(config.params);
    const std::uint64_t master = *config.master_seed;

    ExperimentResult result;
    result.experiment = to_string(ExperimentId::scaling);
    result.table = Table("scaling", with_provenance({"N", "band_lo", "band_hi", "n_iter", "p_measured", "reached",
                                                     "evaluations"}));
    Table fixed("fixed", with_provenance({"N", "n_iter", "p_measured"}));
    Table fit("fit", {"band_lo", "band_hi", "slope", "prefactor", "r2", "points"});

    struct SizeOutcome {
        std::vector<IterationSearch> searches;
        std::vector<double> fixed_p;
    };
    std::vector<SizeOutcome> outcomes(cfg.sizes.size());
    const HTParams params = budget_only(cfg.params);
    parallel_for(cfg.sizes.size(), config.jobs, [&](std::size_t point) {
        const int n = cfg.sizes[point];
        const IsingInstance ladder = gen_mobius_ladder(n / 2);
        const double ground = -(3.0 * (n / 2) - 4.0);
        GroundStateProfile profile(ladder, ground, cfg.runs, params,
                                   instance_seed(master, ExperimentId::scaling, point, 0));
        IterationSearchOptions search;
        search.initial = cfg.initial;
        search.ceiling = cfg.ceiling;
        for (const Band& b : cfg.bands)
            outcomes[point].searches.push_back(iterations_for_probability(profile, b.lo, b.hi, search));
        for (int t : cfg.fixed_budgets) outcomes[point].fixed_p.push_back(profile.probability(t));
    });

    for (std::size_t point = 0; point < cfg.sizes.size(); ++point) {
        const std::uint64_t seed = instance_seed(master, ExperimentId::scaling, point, 0);
        for (std::size_t b = 0; b < cfg.bands.size(); ++b) {
            const IterationSearch& s = outcomes[point].searches[b];
            std::vector<Cell> row = {std::int64_t{cfg.sizes[point]}, cfg.bands[b].lo, cfg.bands[b].hi,
                                     std::int64_t{s.n_iter}, s.p_measured, std::int64_t{s.reached ? 1 : 0},
                                     std::int64_t{s.evaluations}};
            append(row, provenance(master, seed));
            result.table.add_row(std::move(row), !s.reached);
        }
        for (std::size_t f = 0; f < cfg.fixed_budgets.size(); ++f) {
            std::vector<Cell> row = {std::int64_t{cfg.sizes[point]}, std::int64_t{cfg.fixed_budgets[f]},
                                     outcomes[point].fixed_p[f]};
            append(row, provenance(master, seed));
            fixed.add_row(std::move(row));
        }
    }

    for (std::size_t b = 0; b < cfg.bands.size(); ++b) {
        std::vector<double> xs, ys;
        for (std::size_t point = 0; point < cfg.sizes.size(); ++point) {
            const IterationSearch& s = outcomes[point].searches[b];
            if (s.reached && s.n_iter > 0) {
                xs.push_back(cfg.sizes[point]);
                ys.push_back(s.n_iter);
            }
        }
        if (xs.size() < 2) continue;
        const LineFit lf = fit_power_law(xs, ys);
        fit.add_row({cfg.bands[b].lo, cfg.bands[b].hi, lf.slope, std::exp(lf.intercept), lf.r2,
                     std::int64_t{lf.points}});
    }
    result.extra.push_back(std::move(fit));
    if (!cfg.fixed_budgets.empty()) result.extra.push_back(std::move(fixed));
    return result;
}

// ---- exp_rewire_sweep ----

ExperimentResult exp_rewire_sweep(const ExperimentConfig& config) {
    config.validate();
    const auto& cfg = std::get<RewireSweepConfig>(config.params);
    const std::uint64_t master = *config.master_seed;
    const ExperimentId id = ExperimentId::rewire_sweep;

    ExperimentResult result;
    result.experiment = to_string(id);
    result.table = Table("rewire", with_provenance({"N", "percent", "median_cost", "iqr_lo", "iqr_hi", "p_simple",
                                                    "frustration_mean", "graphs", "unsolved_count",
                                                    "rewired_fraction_mean", "cost_metric"}));
    Table baseline("baseline", with_provenance({"N", "graphs", "median_cost", "iqr_lo", "iqr_hi", "p_simple",
                                                "frustration_mean", "unsolved_count", "cost_metric"}));
    if (config.details) result.detail = detail_table();

    const std::size_t per_size = cfg.percents.size();
    const std::size_t sweep_points = cfg.sizes.size() * per_size;
    const std::size_t baseline_points = cfg.random_baseline ? cfg.sizes.size() : 0;
    const std::size_t graphs = static_cast<std::size_t>(cfg.graphs);

    std::vector<IsingInstance> instances;
    std::vector<double> rewired;
    instances.reserve((sweep_points + baseline_points) * graphs);
    for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        const IsingInstance base = gen_mobius_ladder(cfg.sizes[si] / 2);
        for (std::size_t pi = 0; pi < per_size; ++pi) {
            const std::size_t point = si * per_size + pi;
            const int swaps = swaps_for_fraction(base, cfg.percents[pi] / 100.0);
            for (std::size_t r = 0; r < graphs; ++r) {
                RewireResult rw = rewire(base, swaps, instance_seed(master, id, point, r));
                rewired.push_back(rw.rewired_fraction);
                instances.push_back(std::move(rw.instance));
            }
        }
    }
    for (std::size_t si = 0; si < baseline_points; ++si) {
        const std::size_t point = sweep_points + si;
        for (std::size_t r = 0; r < graphs; ++r)
            instances.push_back(gen_random_regular(cfg.sizes[si], 3, CouplingDist::unweighted(),
                                                   instance_seed(master, id, point, r)));
    }

    CertifyOptions options;
    options.solver = cfg.solver;
    const std::vector<Certified> solved = certify_all(instances, options, config.jobs, master, id);

    auto group = [&](std::size_t point) {
        return std::vector<Certified>(solved.begin() + static_cast<std::ptrdiff_t>(point * graphs),
                                      solved.begin() + static_cast<std::ptrdiff_t>((point + 1) * graphs));
    };
    for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        for (std::size_t pi = 0; pi < per_size; ++pi) {
            const std::size_t point = si * per_size + pi;
            const PointSummary s = summarise(group(point), cfg.cost);
            double rw = 0;
            for (std::size_t r = 0; r < graphs; ++r) rw += rewired[point * graphs + r];
            std::vector<Cell> row = {std::int64_t{cfg.sizes[si]}, cfg.percents[pi], s.median, s.q1, s.q3, s.p_simple,
                                     s.frustration, as_int(graphs), std::int64_t{s.unsolved},
                                     rw / static_cast<double>(graphs), to_string(cfg.cost)};
            append(row, provenance(master, instance_seed(master, id, point, 0)));
            result.table.add_row(std::move(row), s.unsolved > 0);
        }
    }
    for (std::size_t si = 0; si < baseline_points; ++si) {
        const std::size_t point = sweep_points + si;
        const PointSummary s = summarise(group(point), cfg.cost);
        std::vector<Cell> row = {std::int64_t{cfg.sizes[si]}, as_int(graphs), s.median, s.q1, s.q3, s.p_simple,
                                 s.frustration, std::int64_t{s.unsolved}, to_string(cfg.cost)};
        append(row, provenance(master, instance_seed(master, id, point, 0)));
        baseline.add_row(std::move(row), s.unsolved > 0);
    }
    if (config.details) {
        for (std::size_t point = 0; point < sweep_points + baseline_points; ++point) {
            const bool base = point >= sweep_points;
            const std::size_t si = base ? point - sweep_points : point / per_size;
            std::ostringstream label;
            if (base) label << "random3";
            else label << "rewire" << cfg.percents[point % per_size];
            for (std::size_t r = 0; r < graphs; ++r)
                add_detail(result.detail, point, static_cast<int>(r), instance_seed(master, id, point, r),
                           label.str(), cfg.sizes[si], solved[point * graphs + r]);
        }
    }
    if (baseline_points > 0) result.extra.push_back(std::move(baseline));
    return result;
}

// ---- exp_connectivity_sweep ----

ExperimentResult exp_connectivity_sweep(const ExperimentConfig& config) {
    config.validate();
    const auto& cfg = std::get<ConnectivityConfig>(config.params);
    const std::uint64_t master = *config.master_seed;
    const ExperimentId id = ExperimentId::connectivity_sweep;

    std::vector<int> ks = cfg.ks;
    if (ks.empty())
        for (int k = 2; k < cfg.n; ++k)
            if (circulant_feasible(cfg.n, k)) ks.push_back(k);

    ExperimentResult result;
    result.experiment = to_string(id);
    result.table = Table("connectivity",
                         with_provenance({"N", "k", "p_simple", "gap_mean", "cost_median", "frustration_mean",
                                          "unsolved_count", "instances", "distinct", "censored_count", "cost_q1",
                                          "cost_q3", "cost_max", "cost_metric"}));
    if (config.details) result.detail = detail_table();

    const std::size_t reps = static_cast<std::size_t>(cfg.instances);
    std::vector<IsingInstance> instances;
    instances.reserve(ks.size() * reps);
    for (std::size_t point = 0; point < ks.size(); ++point)
        for (std::size_t r = 0; r < reps; ++r)
            instances.push_back(gen_random_circulant(cfg.n, ks[point], instance_seed(master, id, point, r)));

    CertifyOptions options;
    options.solver = cfg.solver;
    options.brute_force_fallback = cfg.brute_force_fallback;
    const std::vector<Certified> solved = certify_all(instances, options, config.jobs, master, id);

    for (std::size_t point = 0; point < ks.size(); ++point) {
        const auto first = solved.begin() + static_cast<std::ptrdiff_t>(point * reps);
        const std::vector<Certified> grp(first, first + static_cast<std::ptrdiff_t>(reps));
        std::vector<std::uint64_t> keys;
        for (std::size_t r = 0; r < reps; ++r) keys.push_back(content_key(instances[point * reps + r]));
        std::sort(keys.begin(), keys.end());
        const auto distinct = std::unique(keys.begin(), keys.end()) - keys.begin();

        const PointSummary s = summarise(grp, cfg.cost);
        std::vector<Cell> row = {std::int64_t{cfg.n}, std::int64_t{ks[point]}, s.p_simple, s.gap_mean, s.median,
                                 s.frustration, std::int64_t{s.unsolved}, as_int(reps), std::int64_t{distinct},
                                 std::int64_t{s.censored}, s.q1, s.q3, s.max, to_string(cfg.cost)};
        append(row, provenance(master, instance_seed(master, id, point, 0)));
        result.table.add_row(std::move(row), s.unsolved > 0 || s.censored > 0);
        if (config.details)
            for (std::size_t r = 0; r < reps; ++r)
                add_detail(result.detail, point, static_cast<int>(r), instance_seed(master, id, point, r),
                           "k" + std::to_string(ks[point]), cfg.n, grp[r]);
    }
    return result;
}

// ---- exp_simple_fraction ----

std::vector<FractionPoint> default_fraction_points() {
    std::vector<FractionPoint> out;
    for (int n : {3, 20, 21, 22, 23, 24, 25}) out.push_back({"sk", "gaussian", SkSpec{n, CouplingDist::gaussian()}});
    for (int n : {5, 20, 21, 22, 23, 24, 25}) out.push_back({"sk", "bimodal", SkSpec{n, CouplingDist::bimodal()}});
    for (const char* dist : {"gaussian", "bimodal"})
        for (int n : {10, 20, 30, 40}) {
            MattisTopology topo;
            topo.kind = MattisTopology::Kind::complete;
            topo.n = n;
            out.push_back({"mattis", dist, MattisSpec{topo, CouplingDist::parse(dist)}});
        }
    for (auto [r, c] : {std::pair{4, 4}, std::pair{4, 6}, std::pair{6, 6}})
        out.push_back({"torus", "unweighted", TorusSpec{r, c, CouplingDist::unweighted()}});
    for (int cells : {1, 2}) out.push_back({"chimera", "bf", ChimeraBfSpec{cells, cells, 0.9, 0.1}});
    for (int n_half : {3, 5, 10, 15, 20}) out.push_back({"ladder", "field", LadderFieldSpec{n_half}});
    return out;
}

FractionPoint parse_fraction_point(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("expected model:dist:size, got '" + text + "'");
    const std::string& model = parts[0];
    const std::string& dist = parts[1];
    auto grid = [&](int& a, int& b) {
        const auto x = parts[2].find('x');
        if (x == std::string::npos) throw std::invalid_argument("expected RxC size in '" + text + "'");
        a = std::stoi(parts[2].substr(0, x));
        b = std::stoi(parts[2].substr(x + 1));
    };
    if (model == "sk") return {model, dist, SkSpec{std::stoi(parts[2]), CouplingDist::parse(dist)}};
    if (model == "mattis") {
        MattisTopology topo;
        topo.n = std::stoi(parts[2]);
        return {model, dist, MattisSpec{topo, CouplingDist::parse(dist)}};
    }
    if (model == "torus") {
        TorusSpec t;
        grid(t.rows, t.cols);
        t.dist = CouplingDist::parse(dist);
        return {model, dist, t};
    }
    if (model == "chimera") {
        ChimeraBfSpec c;
        grid(c.cells_x, c.cells_y);
        return {model, dist, c};
    }
    if (model == "ladder") return {model, dist, LadderFieldSpec{std::stoi(parts[2]) / 2}};
    if (model == "planar3r") return {model, dist, Planar3rFieldSpec{std::stoi(parts[2]), std::stoi(parts[2])}};
    throw std::invalid_argument("unknown model '" + model + "' in '" + text + "'");
}

ExperimentResult exp_simple_fraction(const ExperimentConfig& config) {
    config.validate();
    const auto& cfg = std::get<SimpleFractionConfig>(config.params);
    const std::uint64_t master = *config.master_seed;
    const ExperimentId id = ExperimentId::simple_fraction;
    const std::vector<FractionPoint> points = cfg.points.empty() ? default_fraction_points() : cfg.points;

    ExperimentResult result;
    result.experiment = to_string(id);
    result.table = Table("simple-fraction", with_provenance({"model", "dist", "N", "p_simple", "frustration_mean",
                                                             "unsolved_count", "instances", "distinct"}));
    if (config.details) result.detail = detail_table();

    const std::size_t reps = static_cast<std::size_t>(cfg.instances);
    std::vector<IsingInstance> instances;
    instances.reserve(points.size() * reps);
    for (std::size_t point = 0; point < points.size(); ++point)
        for (std::size_t r = 0; r < reps; ++r)
            instances.push_back(generate(points[point].spec, instance_seed(master, id, point, r)));

    CertifyOptions options;
    options.solver = cfg.solver;
    options.brute_force_first = cfg.brute_force_max;
    const std::vector<Certified> solved = certify_all(instances, options, config.jobs, master, id);

    for (std::size_t point = 0; point < points.size(); ++point) {
        const auto first = solved.begin() + static_cast<std::ptrdiff_t>(point * reps);
        const std::vector<Certified> grp(first, first + static_cast<std::ptrdiff_t>(reps));
        std::vector<std::uint64_t> keys;
        for (std::size_t r = 0; r < reps; ++r) keys.push_back(content_key(instances[point * reps + r]));
        std::sort(keys.begin(), keys.end());
        const auto distinct = std::unique(keys.begin(), keys.end()) - keys.begin();

        const int n = instances[point * reps].size();
        const PointSummary s = summarise(grp, CostMetric::nodes);
        std::vector<Cell> row = {points[point].model, points[point].dist, std::int64_t{n}, s.p_simple,
                                 s.frustration, std::int64_t{s.unsolved}, as_int(reps), std::int64_t{distinct}};
        append(row, provenance(master, instance_seed(master, id, point, 0)));
        result.table.add_row(std::move(row), s.unsolved > 0);
        if (config.details)
            for (std::size_t r = 0; r < reps; ++r)
                add_detail(result.detail, point, static_cast<int>(r), instance_seed(master, id, point, r),
                           fraction_label(points[point], n), n, grp[r]);
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    switch (config.id()) {
        case ExperimentId::scaling: return exp_scaling(config);
        case ExperimentId::rewire_sweep: return exp_rewire_sweep(config);
        case ExperimentId::connectivity_sweep: return exp_connectivity_sweep(config);
        case ExperimentId::simple_fraction: return exp_simple_fraction(config);
    }
    throw std::logic_error("unreachable");
}

// ---- emission ----

namespace {

const Table* find_extra(const ExperimentResult& result, const std::string& name) {
    for (const Table& t : result.extra)
        if (t.name == name) return &t;
    return nullptr;
}

PlotSpec plot_for(const ExperimentResult& result) {
    const Table& t = result.table;
    PlotSpec plot;
    if (t.name == "scaling") {
        plot.title = "Iterations to reach the probability band, Mobius ladders";
        plot.x_label = "N";
        plot.y_label = "N_iter";
        plot.log_x = plot.log_y = true;
        std::map<std::pair<double, double>, Series> bands;
        for (std::size_t r = 0; r < t.size(); ++r) {
            if (t.number(r, "reached") == 0) continue;
            const auto key = std::pair{t.number(r, "band_lo"), t.number(r, "band_hi")};
            Series& s = bands[key];
            s.label = "p in [" + format_cell(key.first) + ", " + format_cell(key.second) + "]";
            s.x.push_back(t.number(r, "N"));
            s.y.push_back(t.number(r, "n_iter"));
        }
        for (auto& [key, s] : bands) {
            plot.series.push_back(s);
            if (const Table* fit = find_extra(result, "fit")) {
                for (std::size_t r = 0; r < fit->size(); ++r) {
                    if (fit->number(r, "band_lo") != key.first || fit->number(r, "band_hi") != key.second) continue;
                    Series line;
                    line.label = "fit slope " + format_cell(std::round(fit->number(r, "slope") * 1000) / 1000);
                    line.markers = false;
                    line.line = true;
                    const double a = fit->number(r, "prefactor"), b = fit->number(r, "slope");
                    for (double x : s.x) {
                        line.x.push_back(x);
                        line.y.push_back(a * std::pow(x, b));
                    }
                    plot.series.push_back(std::move(line));
                }
            }
        }
    } else if (t.name == "rewire" || t.name == "connectivity") {
        const bool rewire = t.name == "rewire";
        plot.title = rewire ? "Solve cost of rewired Mobius ladders" : "Solve cost of random circulants";
        plot.x_label = rewire ? "rewired edges (%)" : "connectivity k";
        plot.y_label = "median cost (" + (t.empty() ? std::string("nodes") : format_cell(t.at(0, "cost_metric"))) +
                       ")";
        plot.log_y = true;
        std::map<double, Series> by_n;
        for (std::size_t r = 0; r < t.size(); ++r) {
            const double n = t.number(r, "N");
            Series& s = by_n[n];
            s.label = "N=" + format_cell(n);
            s.line = true;
            s.x.push_back(t.number(r, rewire ? "percent" : "k"));
            s.y.push_back(std::max(t.number(r, rewire ? "median_cost" : "cost_median"), 1e-9));
            s.lo.push_back(std::max(t.number(r, rewire ? "iqr_lo" : "cost_q1"), 1e-9));
            s.hi.push_back(std::max(t.number(r, rewire ? "iqr_hi" : "cost_q3"), 1e-9));
        }
        for (auto& [n, s] : by_n) plot.series.push_back(std::move(s));
    } else {
        plot.title = "Share of simple instances";
        plot.x_label = "model / distribution / N";
        plot.y_label = "p_simple";
        Series s;
        s.label = "p_simple";
        for (std::size_t r = 0; r < t.size(); ++r) {
            plot.categories.push_back(format_cell(t.at(r, "model")) + "/" + format_cell(t.at(r, "dist")) + "/" +
                                      format_cell(t.at(r, "N")));
            s.y.push_back(t.number(r, "p_simple"));
        }
        plot.series.push_back(std::move(s));
    }
    return plot;
}

std::string render(const Table& table, Format format) {
    if (format == Format::csv) return to_csv(table);
    return to_json(table).dump(2) + "\n";
}

}  // namespace

std::vector<std::filesystem::path> emit(const ExperimentResult& result, Format format,
                                        const std::filesystem::path& path) {
    std::vector<std::filesystem::path> written;
    if (format == Format::svg) {
        write_text(path, render_svg(plot_for(result)));
        written.push_back(path);
        return written;
    }
    write_text(path, render(result.table, format));
    written.push_back(path);
    auto sibling = [&](const Table& t) {
        std::filesystem::path p = path;
        p.replace_filename(path.stem().string() + "." + t.name + extension(format));
        write_text(p, render(t, format));
        written.push_back(p);
    };
    for (const Table& t : result.extra) sibling(t);
    if (!result.detail.columns.empty()) sibling(result.detail);
    return written;
}

}  // namespace osc::harness
