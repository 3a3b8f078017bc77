#include "osc/exact.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "osc/energy.hpp"
#include "osc/generators.hpp"
#include "osc/htnet.hpp"
#include "osc/spectral.hpp"

namespace osc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double energy_tolerance(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

// Gray-code enumeration with a dense local-field vector of width W (n <= W).
template <typename Scalar, int W>
struct GrayEnumerator {
    static void run(const IsingInstance& instance, bool fix_first, bool count, SolveReport& out) {
        const int n = instance.size();
        const int offset = fix_first ? 1 : 0;
        const int bits = n - offset;
        alignas(64) std::array<std::array<Scalar, W>, W> twice{};  // 2 J_ij
        alignas(64) std::array<Scalar, W> local{};                 // L_j = sum_i J_ji s_i + h_j
        std::array<int, W> s{};
        for (int i = 0; i < n; ++i) s[i] = 1;
        Scalar e = 0;
        for (const Edge& edge : instance.edges()) {
            const auto w = static_cast<Scalar>(edge.w);
            twice[edge.i][edge.j] = twice[edge.j][edge.i] = 2 * w;
            local[edge.i] += w;
            local[edge.j] += w;
            e -= w;
        }
        for (int i = 0; i < n; ++i) {
            const auto h = static_cast<Scalar>(instance.fields()(i));
            local[i] += h;
            e -= h;
        }

        double scale = 0.0;
        for (const Edge& edge : instance.edges()) scale += std::abs(edge.w);
        for (int i = 0; i < n; ++i) scale += std::abs(instance.fields()(i));
        const Scalar tol = std::is_integral_v<Scalar> ? Scalar(0) : static_cast<Scalar>(energy_tolerance(scale));

        Scalar best = e;
        std::uint64_t best_k = 0;
        std::uint64_t hits = 1;
        const std::uint64_t total = std::uint64_t{1} << bits;
        for (std::uint64_t k = 1; k < total; ++k) {
            const int i = std::countr_zero(k) + offset;
            e += 2 * s[i] * local[i];
            const auto& row = twice[i];
            if (s[i] > 0) {
                for (int j = 0; j < W; ++j) local[j] -= row[j];
            } else {
                for (int j = 0; j < W; ++j) local[j] += row[j];
            }
            s[i] = -s[i];
            if (e < best - tol) {
                best = e;
                best_k = k;
                hits = 1;
            } else if (count && e <= best + tol) {
                ++hits;
            }
        }

        std::vector<int> spins(static_cast<std::size_t>(n), 1);
        const std::uint64_t gray = best_k ^ (best_k >> 1);
        for (int b = 0; b < bits; ++b)
            if ((gray >> b) & 1U) spins[static_cast<std::size_t>(b + offset)] = -1;
        out.best_config = SpinConfig(std::move(spins));
        out.best_energy = energy(instance, out.best_config);
        out.nodes_explored = total;
        if (count) out.ground_degeneracy = fix_first ? 2 * hits : hits;
    }
};

template <typename Scalar>
void enumerate(const IsingInstance& instance, bool fix_first, bool count, SolveReport& out) {
    if (instance.size() <= 16) GrayEnumerator<Scalar, 16>::run(instance, fix_first, count, out);
    else GrayEnumerator<Scalar, 32>::run(instance, fix_first, count, out);
}

}  // namespace

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::time_limit: return "time_limit";
        case SolveStatus::budget: return "budget";
    }
    return "unknown";
}

SolveReport brute_force(const IsingInstance& instance, bool count_degeneracy) {
    const int n = instance.size();
    if (n > kBruteForceMaxSpins)
        throw std::invalid_argument("brute force is capped at " + std::to_string(kBruteForceMaxSpins) + " spins");
    const auto start = Clock::now();
    SolveReport out;
    const bool fix_first = !instance.has_fields();
    double scale = 0.0;
    for (const Edge& e : instance.edges()) scale += std::abs(e.w);
    for (int i = 0; i < n; ++i) scale += std::abs(instance.fields()(i));
    if (instance.integral() && scale < 1e9) enumerate<std::int32_t>(instance, fix_first, count_degeneracy, out);
    else enumerate<double>(instance, fix_first, count_degeneracy, out);
    out.lower_bound = out.best_energy;
    out.gap = 0.0;
    out.status = SolveStatus::optimal;
    out.elapsed_s = seconds_since(start);
    out.time_to_zero_gap_s = out.elapsed_s;
    out.gap_trace.push_back({out.elapsed_s, 0.0, out.best_energy, out.lower_bound});
    return out;
}

double optimality_gap(double best_energy, double lower_bound) {
    const double numerator = best_energy - lower_bound;
    if (numerator < -energy_tolerance(best_energy))
        throw std::invalid_argument("lower bound exceeds the best energy");
    if (numerator <= 0.0) return 0.0;
    if (best_energy == 0.0) return std::numeric_limits<double>::infinity();
    return numerator / std::abs(best_energy);
}

namespace {

class BranchAndBound {
public:
    BranchAndBound(const IsingInstance& instance, const BnbOptions& options)
        : inst_(instance), opt_(options), n_(instance.size()), adj_(instance.adjacency()) {}

    SolveReport run();

private:
    void build_order();
    void seed_incumbent();
    void offer(const std::vector<int>& spins, double e);
    void fix(int v, int value);
    void unfix(int v, int value);
    // Bound of the current partial assignment; `exact` is set when the bound is attained.
    double evaluate(bool& exact);
    double lattice_ceil(double x) const;
    bool prunable(double bound) const;
    void explore(int depth);
    double global_lower_bound(int depth) const;
    void trace(bool force);
    bool should_stop();

    const IsingInstance& inst_;
    const BnbOptions& opt_;
    const int n_;
    const Adjacency& adj_;
    Clock::time_point start_;

    std::vector<int> order_;
    std::vector<int> s_;       // 0 while free
    std::vector<double> b_;    // h_i + sum over fixed neighbours w s_j
    double e_fixed_ = 0.0;
    double free_pair_weight_ = 0.0;
    bool integral_ = false;
    double lattice_base_ = 0.0;
    double tol_ = 0.0;
    bool fixed_first_ = false;

    double best_ = std::numeric_limits<double>::infinity();
    std::vector<int> best_s_;
    double root_bound_ = -std::numeric_limits<double>::infinity();
    double lb_floor_ = -std::numeric_limits<double>::infinity();
    bool root_ready_ = false;
    std::optional<double> lambda_max_;  // of the coupling matrix, when the incumbent step computed it

    std::vector<double> active_;   // bound of the child being explored at each depth
    std::vector<double> pending_;  // bound of the sibling still waiting at each depth
    int depth_now_ = 0;
    std::vector<int> path_vars_, path_vals_;

    std::uint64_t nodes_ = 0;
    bool stopped_ = false;
    SolveStatus stop_status_ = SolveStatus::optimal;
    std::vector<GapSample> trace_;
    std::optional<double> zero_gap_at_;

    // Cycle-packing scratch; vertex n_ is the reference spin standing for all fixed spins.
    std::vector<double> resid_edge_, resid_ref_;
    std::vector<int> parent_, parent_edge_, depth_, sigma_, queue_, completion_;
    std::vector<std::pair<int, int>> violated_;
};

void BranchAndBound::build_order() {
    std::vector<double> wdeg(static_cast<std::size_t>(n_), 0.0);
    for (int v = 0; v < n_; ++v)
        for (int a = adj_.offsets[v]; a < adj_.offsets[v + 1]; ++a) wdeg[v] += std::abs(adj_.weights[a]);
    std::vector<double> link(static_cast<std::size_t>(n_), 0.0);
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    order_.clear();
    for (int step = 0; step < n_; ++step) {
        int pick = -1;
        for (int v = 0; v < n_; ++v) {
            if (used[v]) continue;
            if (pick < 0 || wdeg[v] > wdeg[pick] || (wdeg[v] == wdeg[pick] && link[v] > link[pick])) pick = v;
        }
        used[pick] = 1;
        order_.push_back(pick);
        for (int a = adj_.offsets[pick]; a < adj_.offsets[pick + 1]; ++a)
            link[adj_.neighbors[a]] += std::abs(adj_.weights[a]);
    }
}

void BranchAndBound::offer(const std::vector<int>& spins, double e) {
    if (e < best_ - tol_) {
        best_ = e;
        best_s_ = spins;
        trace(false);
    }
}

void BranchAndBound::seed_incumbent() {
    std::vector<int> up(static_cast<std::size_t>(n_), 1);
    offer(up, energy(inst_, SpinConfig(up)));
    if (!opt_.heuristic_incumbent) return;
    auto polish = [&](SpinConfig s) {
        const double e = descend(inst_, s);
        offer(s.values(), e);
    };
    const bool absorb = inst_.has_fields();
    const IsingInstance target = absorb ? absorb_fields(inst_) : inst_;
    const SpectralSummary summary = eig_sym(target);
    if (!absorb) lambda_max_ = summary.lambda_max();
    const int top = std::min(summary.top_multiplicity, 8);
    for (int k = 0; k < top; ++k) {
        const auto col = summary.eigenvectors.col(k);
        std::vector<int> s(static_cast<std::size_t>(n_));
        const double orient = absorb && col(0) < 0 ? -1.0 : 1.0;
        for (int i = 0; i < n_; ++i) s[static_cast<std::size_t>(i)] = orient * col(i + (absorb ? 1 : 0)) >= 0 ? 1 : -1;
        polish(SpinConfig(std::move(s)));
    }
    polish(ht_run(inst_, HTParams{}, opt_.seed).spins);
}

void BranchAndBound::fix(int v, int value) {
    e_fixed_ -= b_[v] * value;
    for (int a = adj_.offsets[v]; a < adj_.offsets[v + 1]; ++a) {
        const int j = adj_.neighbors[a];
        if (s_[j] != 0) continue;
        b_[j] += adj_.weights[a] * value;
        free_pair_weight_ -= std::abs(adj_.weights[a]);
    }
    s_[v] = value;
    path_vars_.push_back(v);
    path_vals_.push_back(value);
}

void BranchAndBound::unfix(int v, int value) {
    s_[v] = 0;
    for (int a = adj_.offsets[v]; a < adj_.offsets[v + 1]; ++a) {
        const int j = adj_.neighbors[a];
        if (s_[j] != 0) continue;
        b_[j] -= adj_.weights[a] * value;
        free_pair_weight_ += std::abs(adj_.weights[a]);
    }
    e_fixed_ += b_[v] * value;
    path_vars_.pop_back();
    path_vals_.pop_back();
}

double BranchAndBound::lattice_ceil(double x) const {
    if (!integral_) return x;
    return lattice_base_ + 2.0 * std::ceil((x - lattice_base_) / 2.0 - 1e-9);
}

bool BranchAndBound::prunable(double bound) const {
    if (integral_) return bound >= best_ - 0.5;
    const double slack = std::max(tol_, opt_.target_gap * std::abs(best_));
    return bound >= best_ - slack;
}

double BranchAndBound::evaluate(bool& exact) {
    const int ref = n_;
    double interval = e_fixed_ - free_pair_weight_;
    for (int i = 0; i < n_; ++i)
        if (s_[i] == 0) interval -= std::abs(b_[i]);

    const auto& edges = inst_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        resid_edge_[e] = (s_[edges[e].i] == 0 && s_[edges[e].j] == 0) ? std::abs(edges[e].w) : 0.0;
    for (int i = 0; i < n_; ++i) resid_ref_[i] = s_[i] == 0 ? std::abs(b_[i]) : 0.0;

    double packed = 0.0;
    bool first_round = true;
    exact = false;
    for (;;) {
        // Spanning forest over positive residual edges, reference spin first.
        std::fill(parent_.begin(), parent_.end(), -2);
        int head = 0, tail = 0;
        auto grow = [&](int root) {
            parent_[root] = -1;
            parent_edge_[root] = -1;
            depth_[root] = 0;
            sigma_[root] = 1;
            queue_[tail++] = root;
            while (head < tail) {
                const int u = queue_[head++];
                auto visit = [&](int x, int code, double weight) {
                    if (parent_[x] != -2) return;
                    parent_[x] = u;
                    parent_edge_[x] = code;
                    depth_[x] = depth_[u] + 1;
                    sigma_[x] = weight > 0 ? sigma_[u] : -sigma_[u];
                    queue_[tail++] = x;
                };
                if (u == ref) {
                    for (int i = 0; i < n_; ++i)
                        if (resid_ref_[i] > 0) visit(i, -2 - i, b_[i]);
                    continue;
                }
                if (resid_ref_[u] > 0) visit(ref, -2 - u, b_[u]);
                for (int a = adj_.offsets[u]; a < adj_.offsets[u + 1]; ++a)
                    if (resid_edge_[adj_.edge_ids[a]] > 0) visit(adj_.neighbors[a], adj_.edge_ids[a], adj_.weights[a]);
            }
        };
        grow(ref);
        for (int i = 0; i < n_; ++i)
            if (s_[i] == 0 && parent_[i] == -2) grow(i);

        violated_.clear();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (resid_edge_[e] <= 0) continue;
            const int i = edges[e].i, j = edges[e].j;
            if (edges[e].w * sigma_[i] * sigma_[j] < 0) violated_.push_back({depth_[i] + depth_[j], static_cast<int>(e)});
        }
        for (int i = 0; i < n_; ++i)
            if (resid_ref_[i] > 0 && b_[i] * sigma_[i] < 0) violated_.push_back({depth_[i], -2 - i});

        if (violated_.empty()) {
            if (first_round) exact = true;
            for (int i = 0; i < n_; ++i) completion_[i] = s_[i] != 0 ? s_[i] : sigma_[i];
            break;
        }
        first_round = false;
        if (!opt_.cycle_bound) {
            // Interval bound only; still offer the tree completion as a candidate.
            for (int i = 0; i < n_; ++i) completion_[i] = s_[i] != 0 ? s_[i] : sigma_[i];
            break;
        }
        std::sort(violated_.begin(), violated_.end());
        for (const auto& [key, code] : violated_) {
            (void)key;
            int u, v;
            double* closing;
            if (code >= 0) {
                u = edges[static_cast<std::size_t>(code)].i;
                v = edges[static_cast<std::size_t>(code)].j;
                closing = &resid_edge_[static_cast<std::size_t>(code)];
            } else {
                u = -2 - code;
                v = ref;
                closing = &resid_ref_[static_cast<std::size_t>(u)];
            }
            auto resid_of = [&](int x) -> double& {
                const int c = parent_edge_[x];
                return c >= 0 ? resid_edge_[static_cast<std::size_t>(c)] : resid_ref_[static_cast<std::size_t>(-2 - c)];
            };
            double delta = *closing;
            int a = u, c = v;
            while (a != c && delta > 0) {
                if (depth_[a] >= depth_[c]) {
                    delta = std::min(delta, resid_of(a));
                    a = parent_[a];
                } else {
                    delta = std::min(delta, resid_of(c));
                    c = parent_[c];
                }
            }
            if (delta <= 0) continue;
            *closing -= delta;
            a = u;
            c = v;
            while (a != c) {
                if (depth_[a] >= depth_[c]) {
                    resid_of(a) -= delta;
                    a = parent_[a];
                } else {
                    resid_of(c) -= delta;
                    c = parent_[c];
                }
            }
            packed += delta;
        }
    }

    if (!exact) {
        double e = 0.0;
        for (const Edge& edge : edges) e -= edge.w * completion_[edge.i] * completion_[edge.j];
        for (int i = 0; i < n_; ++i) e -= inst_.fields()(i) * completion_[i];
        offer(completion_, e);
    } else {
        offer(completion_, interval);
    }
    return lattice_ceil(interval + 2.0 * packed);
}

double BranchAndBound::global_lower_bound(int depth) const {
    double lb = best_;
    for (int d = 0; d <= depth && d < static_cast<int>(active_.size()); ++d) {
        lb = std::min(lb, active_[d]);
        lb = std::min(lb, pending_[d]);
    }
    return std::max(lb, lb_floor_);
}

void BranchAndBound::trace(bool force) {
    if (!root_ready_) return;
    double lb = std::min(global_lower_bound(depth_now_), best_);
    lb = std::max(lb, lb_floor_);
    const double gap = optimality_gap(best_, std::min(lb, best_));
    if (!force && !trace_.empty() && trace_.back().gap == gap && trace_.back().best_energy == best_) return;
    const double t = seconds_since(start_);
    trace_.push_back({t, gap, best_, lb});
    if (gap == 0.0 && !zero_gap_at_) zero_gap_at_ = t;
}

bool BranchAndBound::should_stop() {
    if (stopped_) return true;
    if (nodes_ >= opt_.node_budget) {
        stopped_ = true;
        stop_status_ = SolveStatus::budget;
    } else if ((nodes_ & 63U) == 0 && seconds_since(start_) >= opt_.time_limit_s) {
        stopped_ = true;
        stop_status_ = SolveStatus::time_limit;
    }
    return stopped_;
}

void BranchAndBound::explore(int depth) {
    depth_now_ = depth;
    const int v = order_[static_cast<std::size_t>(depth)];
    const double parent_bound = active_[static_cast<std::size_t>(depth)];
    struct Child {
        double bound;
        int value;
        bool exact;
    };
    std::array<Child, 2> kids{};
    int count = 0;
    const bool single = depth == 0 && fixed_first_;
    for (int value : {1, -1}) {
        if (single && value == -1) continue;
        if (should_stop()) return;
        ++nodes_;
        fix(v, value);
        bool exact = false;
        const double bound = std::max(evaluate(exact), parent_bound);
        if (opt_.audit) opt_.audit(NodeEvent{&path_vars_, &path_vals_, bound, best_, exact || prunable(bound)});
        unfix(v, value);
        kids[static_cast<std::size_t>(count++)] = {bound, value, exact};
    }
    if (count == 2 && kids[1].bound < kids[0].bound) std::swap(kids[0], kids[1]);

    for (int k = 0; k < count; ++k) {
        pending_[static_cast<std::size_t>(depth)] =
            k + 1 < count ? kids[static_cast<std::size_t>(k + 1)].bound : std::numeric_limits<double>::infinity();
        const Child& kid = kids[static_cast<std::size_t>(k)];
        if (kid.exact || prunable(kid.bound) || depth + 1 >= n_) continue;
        if (should_stop()) return;
        active_[static_cast<std::size_t>(depth + 1)] = kid.bound;
        fix(v, kid.value);
        explore(depth + 1);
        unfix(v, kid.value);
        active_[static_cast<std::size_t>(depth + 1)] = std::numeric_limits<double>::infinity();
        depth_now_ = depth;
        if (stopped_) return;
        if ((nodes_ & 1023U) == 0) trace(false);
    }
    pending_[static_cast<std::size_t>(depth)] = std::numeric_limits<double>::infinity();
}

SolveReport BranchAndBound::run() {
    s_.assign(static_cast<std::size_t>(n_), 0);
    b_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) b_[i] = inst_.fields()(i);
    double total = 0.0, parity = 0.0;
    integral_ = inst_.integral();
    for (const Edge& e : inst_.edges()) {
        free_pair_weight_ += std::abs(e.w);
        total += std::abs(e.w);
        parity += e.w;
    }
    for (int i = 0; i < n_; ++i) {
        total += std::abs(inst_.fields()(i));
        parity += inst_.fields()(i);
    }
    if (integral_ && total > 1e12) integral_ = false;
    lattice_base_ = parity - 2.0 * std::floor(parity / 2.0);
    tol_ = energy_tolerance(total);
    fixed_first_ = !inst_.has_fields();

    resid_edge_.resize(inst_.edge_count());
    resid_ref_.resize(static_cast<std::size_t>(n_));
    parent_.resize(static_cast<std::size_t>(n_ + 1));
    parent_edge_.resize(static_cast<std::size_t>(n_ + 1));
    depth_.resize(static_cast<std::size_t>(n_ + 1));
    sigma_.resize(static_cast<std::size_t>(n_ + 1));
    queue_.resize(static_cast<std::size_t>(n_ + 1));
    completion_.resize(static_cast<std::size_t>(n_));
    active_.assign(static_cast<std::size_t>(n_ + 1), std::numeric_limits<double>::infinity());
    pending_.assign(static_cast<std::size_t>(n_ + 1), std::numeric_limits<double>::infinity());

    start_ = Clock::now();
    build_order();
    seed_incumbent();

    bool exact = false;
    root_bound_ = evaluate(exact);
    if (opt_.spectral_root_bound && !exact) {
        if (!lambda_max_) {
            const Matrix j = inst_.coupling_matrix();
            lambda_max_ = Eigen::SelfAdjointEigenSolver<Matrix>(j, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
        }
        const double lambda = *lambda_max_;
        const double spectral = -0.5 * n_ * lambda - inst_.fields().cwiseAbs().sum();
        root_bound_ = std::max(root_bound_, lattice_ceil(spectral - tol_));
    }
    root_bound_ = std::min(root_bound_, best_);
    lb_floor_ = root_bound_;
    active_[0] = root_bound_;
    root_ready_ = true;
    ++nodes_;
    trace(true);

    const bool search = !exact && !prunable(root_bound_) && opt_.time_limit_s > 0 && opt_.node_budget > 1;
    if (search) {
        explore(0);
    } else if (!exact && !prunable(root_bound_)) {
        stopped_ = true;
        stop_status_ = opt_.time_limit_s > 0 ? SolveStatus::budget : SolveStatus::time_limit;
    }

    SolveReport out;
    out.best_energy = best_;
    out.best_config = SpinConfig(best_s_);
    if (stopped_) {
        out.lower_bound = std::min(global_lower_bound(depth_now_), best_);
        out.status = stop_status_;
    } else {
        out.lower_bound = best_;
        out.status = SolveStatus::optimal;
    }
    out.lower_bound = std::max(out.lower_bound, lb_floor_);
    out.gap = optimality_gap(out.best_energy, out.lower_bound);
    if (out.gap > 0 && opt_.target_gap > 0 && out.gap <= opt_.target_gap && !stopped_) out.status = SolveStatus::optimal;
    out.gap_infinite = std::isinf(out.gap);
    out.nodes_explored = nodes_;
    out.elapsed_s = seconds_since(start_);
    trace_.push_back({out.elapsed_s, out.gap, out.best_energy, out.lower_bound});
    if (out.gap == 0.0 && !zero_gap_at_) zero_gap_at_ = out.elapsed_s;
    out.time_to_zero_gap_s = zero_gap_at_;
    out.gap_trace = std::move(trace_);
    return out;
}

}  // namespace

SolveReport branch_and_bound(const IsingInstance& instance, const BnbOptions& options) {
    if (options.target_gap < 0) throw std::invalid_argument("target_gap must be non-negative");
    BranchAndBound solver(instance, options);
    return solver.run();
}

nlohmann::ordered_json report_to_json(const SolveReport& report) {
    nlohmann::ordered_json doc;
    doc["best_energy"] = report.best_energy;
    doc["best_config"] = report.best_config.values();
    doc["lower_bound"] = report.lower_bound;
    if (report.gap_infinite) doc["gap"] = "inf";
    else doc["gap"] = report.gap;
    doc["status"] = to_string(report.status);
    doc["nodes_explored"] = report.nodes_explored;
    doc["elapsed_s"] = report.elapsed_s;
    if (report.time_to_zero_gap_s) doc["time_to_zero_gap_s"] = *report.time_to_zero_gap_s;
    else doc["time_to_zero_gap_s"] = nullptr;
    if (report.ground_degeneracy) doc["ground_degeneracy"] = *report.ground_degeneracy;
    else doc["ground_degeneracy"] = nullptr;
    auto trace = nlohmann::ordered_json::array();
    for (const GapSample& g : report.gap_trace) {
        nlohmann::ordered_json row;
        row["elapsed_s"] = g.elapsed_s;
        if (std::isinf(g.gap)) row["gap"] = "inf";
        else row["gap"] = g.gap;
        row["best_energy"] = g.best_energy;
        row["lower_bound"] = g.lower_bound;
        trace.push_back(std::move(row));
    }
    doc["gap_trace"] = std::move(trace);
    return doc;
}

std::string gap_trace_csv(const SolveReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "elapsed_s,gap,best_energy,lower_bound\n";
    for (const GapSample& g : report.gap_trace) {
        out << g.elapsed_s << ',';
        if (std::isinf(g.gap)) out << "inf";
        else out << g.gap;
        out << ',' << g.best_energy << ',' << g.lower_bound << '\n';
    }
    return out.str();
}

}  // namespace osc
