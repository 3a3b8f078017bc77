// Command-line front end: instance generation, solving, simplicity checks, HT runs and the
// four experiments. Exit codes: 0 success, 2 configuration error, 3 budget exhausted with
// flagged rows (or a non-optimal solve).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osc/energy.hpp"
#include "osc/exact.hpp"
#include "osc/generators.hpp"
#include "osc/harness/experiments.hpp"
#include "osc/htnet.hpp"
#include "osc/instance_io.hpp"
#include "osc/spectral.hpp"

namespace {

using namespace osc;
using namespace osc::harness;

constexpr int kExitConfig = 2;
constexpr int kExitFlagged = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelFlags {
    std::string model = "mobius";
    std::string size = "8";
    int k = 3;
    std::string dist = "unweighted";
    double rewire_frac = 0.0;
    double p0 = 0.9;
    double p1 = 0.1;
    std::vector<int> offsets;
    int rewire_count = 0;
};

struct Shared {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    double time_limit_s = std::numeric_limits<double>::infinity();
    std::uint64_t node_budget = 0;  // 0: experiment default
    int runs = 0;                   // 0: experiment default
    int jobs = 1;
    bool details = false;
};

std::pair<int, int> grid_size(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) {
        const int n = std::stoi(text);
        return {n, n};
    }
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

ModelSpec model_spec(const ModelFlags& f) {
    const CouplingDist dist = CouplingDist::parse(f.dist);
    const auto [a, b] = grid_size(f.size);
    if (f.model == "mobius") {
        if (a % 2) throw ConfigError("mobius --size must be even (N = 2 n_half)");
        return MobiusSpec{a / 2};
    }
    if (f.model == "circulant") {
        std::vector<double> w(f.offsets.size(), -1.0);
        return CirculantSpec{a, f.offsets, w};
    }
    if (f.model == "random-circulant") return RandomCirculantSpec{a, f.k};
    if (f.model == "random-regular") return RandomRegularSpec{a, f.k, dist};
    if (f.model == "sk") return SkSpec{a, dist};
    if (f.model == "mattis") {
        MattisTopology topo;
        topo.n = a;
        return MattisSpec{topo, dist};
    }
    if (f.model == "torus") return TorusSpec{a, b, dist};
    if (f.model == "chimera") return ChimeraBfSpec{a, b, f.p0, f.p1};
    if (f.model == "ladder-field") {
        if (a % 2) throw ConfigError("ladder-field --size must be even (N = 2 n_half)");
        return LadderFieldSpec{a / 2};
    }
    if (f.model == "planar3r") return Planar3rFieldSpec{a, f.rewire_count};
    throw ConfigError("unknown model '" + f.model + "'");
}

IsingInstance build_instance(const ModelFlags& f, std::uint64_t seed) {
    IsingInstance inst = generate(model_spec(f), seed);
    if (f.rewire_frac > 0) {
        const int swaps = swaps_for_fraction(inst, f.rewire_frac);
        InstanceMeta meta = inst.meta();
        inst = rewire(inst, swaps, mix64(seed, 0x7265)).instance;
        meta.params["rewire_frac"] = f.rewire_frac;
        inst.meta() = meta;
    }
    return inst;
}

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
    cmd->add_option("--model", f.model,
                    "mobius | circulant | random-circulant | random-regular | sk | mattis | torus | chimera | "
                    "ladder-field | planar3r")
        ->capture_default_str();
    cmd->add_option("--size", f.size, "spin count N, or RxC for torus and chimera cells")->capture_default_str();
    cmd->add_option("--k", f.k, "degree for random-regular and random-circulant")->capture_default_str();
    cmd->add_option("--dist", f.dist, "unweighted | bimodal | gaussian")->capture_default_str();
    cmd->add_option("--rewire-frac", f.rewire_frac, "share of edges to rewire after generation")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p0", f.p0, "chimera: probability of h = 0")->capture_default_str();
    cmd->add_option("--p1", f.p1, "chimera: probability of h = 1")->capture_default_str();
    cmd->add_option("--offsets", f.offsets, "circulant offsets (weight -1 each)");
    cmd->add_option("--rewire-count", f.rewire_count, "planar3r: number of planar swaps");
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    write_text(path, text);
}

IsingInstance read_instance(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return from_json_string(ss.str());
    }
    return load_instance(path);
}

BnbOptions solver_options(const Shared& s, BnbOptions base) {
    base.time_limit_s = s.time_limit_s;
    if (s.node_budget > 0) base.node_budget = s.node_budget;
    return base;
}

int finish_experiment(const ExperimentConfig& config, const Shared& s) {
    const ExperimentResult result = run_experiment(config);
    const Format format = parse_format(s.format);
    if (s.out.empty()) {
        std::cout << (format == Format::json ? to_json(result.table).dump(2) + "\n" : to_csv(result.table));
        for (const Table& t : result.extra)
            std::cout << "\n# " << t.name << "\n" << (format == Format::json ? to_json(t).dump(2) + "\n" : to_csv(t));
    } else {
        for (const auto& p : emit(result, format, s.out)) std::cerr << "wrote " << p.string() << "\n";
    }
    const int flagged = result.flagged();
    if (flagged > 0) {
        std::cerr << flagged << " row(s) flagged (budget exhausted or target unreachable)\n";
        return kExitFlagged;
    }
    return 0;
}

void add_shared(CLI::App* cmd, Shared& s, bool experiment) {
    auto* seed = cmd->add_option("--seed", s.seed, "master seed");
    if (experiment) seed->required();
    cmd->add_option("--out", s.out, "output path (stdout when omitted)");
    if (experiment) {
        cmd->add_option("--format", s.format, "csv | json | svg")->capture_default_str();
        cmd->add_option("--runs", s.runs, "runs per evaluation / graphs or instances per point");
        cmd->add_option("--jobs", s.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_flag("--details", s.details, "also write one row per instance");
    }
    cmd->add_option("--time-limit-s", s.time_limit_s, "wall-clock limit per exact solve");
    cmd->add_option("--node-budget", s.node_budget, "branch-and-bound node budget per solve");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ising instance generation, simplicity checks, Hopfield-Tank runs and exact solvers"};
    app.require_subcommand(1);

    // generate
    ModelFlags gen_model;
    Shared gen_shared;
    auto* gen = app.add_subcommand("generate", "write an instance document");
    add_model_flags(gen, gen_model);
    add_shared(gen, gen_shared, false);

    // solve
    std::string solve_in, solve_method = "bnb", solve_trace;
    double solve_target_gap = 0.0;
    bool solve_degeneracy = false;
    Shared solve_shared;
    auto* solve = app.add_subcommand("solve", "exact ground state of an instance file");
    solve->add_option("--in", solve_in, "instance document ('-' for stdin)")->required();
    solve->add_option("--method", solve_method, "bnb | brute")->capture_default_str();
    solve->add_option("--target-gap", solve_target_gap, "stop once the gap is at most this");
    solve->add_option("--trace", solve_trace, "gap trace CSV path");
    solve->add_flag("--degeneracy", solve_degeneracy, "brute: count ground states");
    add_shared(solve, solve_shared, false);

    // osc-check
    std::string osc_in;
    std::optional<double> osc_ground;
    Shared osc_shared;
    auto* osc_cmd = app.add_subcommand("osc-check", "optimisation simplicity verdict");
    osc_cmd->add_option("--in", osc_in, "instance document ('-' for stdin)")->required();
    osc_cmd->add_option("--ground", osc_ground, "known ground energy (solved exactly when omitted)");
    add_shared(osc_cmd, osc_shared, false);

    // ht-run
    std::string ht_in, ht_trace;
    HTParams ht_params;
    int ht_runs = 1;
    int ht_record = 0;
    std::optional<double> ht_ground;
    Shared ht_shared;
    auto* ht = app.add_subcommand("ht-run", "Hopfield-Tank dynamics on an instance file");
    ht->add_option("--in", ht_in, "instance document ('-' for stdin)")->required();
    ht->add_option("--iters", ht_params.max_iters, "iteration budget")->capture_default_str();
    ht->add_option("--dt", ht_params.dt)->capture_default_str();
    ht->add_option("--tau", ht_params.tau)->capture_default_str();
    ht->add_option("--x0", ht_params.x0)->capture_default_str();
    ht->add_option("--bias", ht_params.bias)->capture_default_str();
    ht->add_option("--fixpoint-tol", ht_params.fixpoint_tol, "0 runs the full budget")->capture_default_str();
    ht->add_option("--init-amplitude", ht_params.init_amplitude)->capture_default_str();
    ht->add_option("--runs", ht_runs, "independent runs")->check(CLI::PositiveNumber);
    ht->add_option("--ground", ht_ground, "ground energy for proximity and success rate");
    ht->add_option("--trace", ht_trace, "trace CSV of run 0 (iteration, energy, proximity)");
    ht->add_option("--record-every", ht_record, "trace sampling period");
    add_shared(ht, ht_shared, false);

    // exp-scaling
    Shared sc_shared;
    std::vector<int> sc_sizes;
    std::vector<std::string> sc_bands;
    std::vector<int> sc_fixed;
    int sc_ceiling = 1 << 22;
    auto* sc = app.add_subcommand("exp-scaling", "HT iterations to reach a ground-state probability band");
    add_shared(sc, sc_shared, true);
    sc->add_option("--sizes", sc_sizes, "Mobius sizes (multiples of 4)");
    sc->add_option("--band", sc_bands, "probability band lo,hi (repeatable), default 0.50,0.55");
    sc->add_option("--fixed-budgets", sc_fixed, "also report p_gs at these budgets");
    sc->add_option("--ceiling", sc_ceiling, "largest budget tried")->capture_default_str();

    // exp-rewire
    Shared rw_shared;
    std::vector<int> rw_sizes;
    std::vector<double> rw_percents;
    std::string rw_cost = "nodes";
    bool rw_no_baseline = false;
    auto* rw = app.add_subcommand("exp-rewire", "solve cost against the share of rewired edges");
    add_shared(rw, rw_shared, true);
    rw->add_option("--sizes", rw_sizes, "Mobius sizes");
    rw->add_option("--percents", rw_percents, "rewired percentages");
    rw->add_option("--cost", rw_cost, "nodes | seconds")->capture_default_str();
    rw->add_flag("--no-baseline", rw_no_baseline, "skip the random 3-regular baseline");

    // exp-connectivity
    Shared cn_shared;
    int cn_size = 30;
    std::vector<int> cn_ks;
    int cn_brute = 30;
    std::string cn_cost = "nodes";
    auto* cn = app.add_subcommand("exp-connectivity", "simplicity and solve cost of random circulants against k");
    add_shared(cn, cn_shared, true);
    cn->add_option("--size", cn_size, "N")->capture_default_str();
    cn->add_option("--k", cn_ks, "degrees (default: every feasible k)");
    cn->add_option("--brute-fallback", cn_brute, "enumerate unsolved instances up to this many spins")
        ->capture_default_str();
    cn->add_option("--cost", cn_cost, "nodes | seconds")->capture_default_str();

    // exp-simple-fraction
    Shared sf_shared;
    std::vector<std::string> sf_points;
    int sf_brute = 26;
    auto* sf = app.add_subcommand("exp-simple-fraction", "share of simple instances per model and size");
    add_shared(sf, sf_shared, true);
    sf->add_option("--point", sf_points, "model:dist:size, e.g. sk:gaussian:20 (repeatable)");
    sf->add_option("--brute-max", sf_brute, "enumerate up to this many spins")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*gen) {
            const IsingInstance inst = build_instance(gen_model, gen_shared.seed.value_or(0));
            write_or_print(gen_shared.out, to_json_string(inst) + "\n");
            return 0;
        }
        if (*solve) {
            const IsingInstance inst = read_instance(solve_in);
            SolveReport report;
            if (solve_method == "brute") {
                report = brute_force(inst, solve_degeneracy);
            } else if (solve_method == "bnb") {
                BnbOptions o = solver_options(solve_shared, {});
                o.target_gap = solve_target_gap;
                o.seed = solve_shared.seed.value_or(0);
                report = branch_and_bound(inst, o);
            } else {
                throw ConfigError("unknown method '" + solve_method + "'");
            }
            write_or_print(solve_shared.out, report_to_json(report).dump(2) + "\n");
            if (!solve_trace.empty()) write_text(solve_trace, gap_trace_csv(report));
            return report.status == SolveStatus::optimal ? 0 : kExitFlagged;
        }
        if (*osc_cmd) {
            const IsingInstance inst = read_instance(osc_in);
            double ground = 0;
            if (osc_ground) {
                ground = *osc_ground;
            } else {
                BnbOptions o = solver_options(osc_shared, {});
                o.seed = osc_shared.seed.value_or(0);
                const SolveReport r = inst.size() <= 26 ? brute_force(inst) : branch_and_bound(inst, o);
                if (r.status != SolveStatus::optimal) {
                    std::cerr << "ground state not proven within the budget (gap " << r.gap << ")\n";
                    return kExitFlagged;
                }
                ground = r.best_energy;
            }
            nlohmann::json out = verdict_to_json(osc_check(inst, ground));
            out["ground_energy"] = ground;
            write_or_print(osc_shared.out, out.dump(2) + "\n");
            return 0;
        }
        if (*ht) {
            const IsingInstance inst = read_instance(ht_in);
            ht_params.record_every = ht_record;
            ht_params.validate();
            const std::uint64_t master = ht_shared.seed.value_or(0);
            nlohmann::ordered_json runs = nlohmann::ordered_json::array();
            int hits = 0;
            for (int r = 0; r < ht_runs; ++r) {
                const HTRun run = ht_run(inst, ht_params, run_seed(master, static_cast<std::uint64_t>(r)), ht_ground);
                const bool hit = ht_ground && std::abs(run.energy - *ht_ground) <= 1e-9 * std::max(1.0, std::abs(*ht_ground));
                hits += hit ? 1 : 0;
                nlohmann::ordered_json row;
                row["run"] = r;
                row["seed"] = run_seed(master, static_cast<std::uint64_t>(r));
                row["energy"] = run.energy;
                row["iterations"] = run.trace.iterations_run;
                row["converged"] = run.trace.converged;
                if (ht_ground) row["ground"] = hit;
                runs.push_back(row);
                if (r == 0 && !ht_trace.empty()) {
                    std::ostringstream csv;
                    csv << "iteration,energy,proximity\n";
                    for (std::size_t i = 0; i < run.trace.iterations.size(); ++i) {
                        csv << run.trace.iterations[i] << ',' << run.trace.energy_history[i] << ',';
                        if (i < run.trace.proximity_history.size()) csv << run.trace.proximity_history[i];
                        csv << '\n';
                    }
                    write_text(ht_trace, csv.str());
                }
            }
            nlohmann::ordered_json out;
            out["runs"] = runs;
            if (ht_ground) out["ground_state_probability"] = static_cast<double>(hits) / ht_runs;
            write_or_print(ht_shared.out, out.dump(2) + "\n");
            return 0;
        }

        ExperimentConfig config;
        const Shared* shared = nullptr;
        if (*sc) {
            shared = &sc_shared;
            ScalingConfig p;
            if (!sc_sizes.empty()) p.sizes = sc_sizes;
            if (!sc_bands.empty()) {
                p.bands.clear();
                for (const std::string& b : sc_bands) {
                    const auto comma = b.find(',');
                    if (comma == std::string::npos) throw ConfigError("--band expects lo,hi");
                    p.bands.push_back({std::stod(b.substr(0, comma)), std::stod(b.substr(comma + 1))});
                }
            }
            if (sc_shared.runs > 0) p.runs = sc_shared.runs;
            p.fixed_budgets = sc_fixed;
            p.ceiling = sc_ceiling;
            config.params = p;
        } else if (*rw) {
            shared = &rw_shared;
            RewireSweepConfig p;
            if (!rw_sizes.empty()) p.sizes = rw_sizes;
            if (!rw_percents.empty()) p.percents = rw_percents;
            if (rw_shared.runs > 0) p.graphs = rw_shared.runs;
            p.solver = solver_options(rw_shared, p.solver);
            p.cost = parse_cost_metric(rw_cost);
            p.random_baseline = !rw_no_baseline;
            config.params = p;
        } else if (*cn) {
            shared = &cn_shared;
            ConnectivityConfig p;
            p.n = cn_size;
            p.ks = cn_ks;
            if (cn_shared.runs > 0) p.instances = cn_shared.runs;
            p.solver = solver_options(cn_shared, p.solver);
            p.brute_force_fallback = cn_brute;
            p.cost = parse_cost_metric(cn_cost);
            config.params = p;
        } else if (*sf) {
            shared = &sf_shared;
            SimpleFractionConfig p;
            for (const std::string& text : sf_points) p.points.push_back(parse_fraction_point(text));
            if (sf_shared.runs > 0) p.instances = sf_shared.runs;
            p.brute_force_max = sf_brute;
            p.solver = solver_options(sf_shared, p.solver);
            config.params = p;
        }
        config.master_seed = shared->seed;
        config.jobs = shared->jobs;
        config.details = shared->details;
        parse_format(shared->format);
        config.validate();
        return finish_experiment(config, *shared);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
