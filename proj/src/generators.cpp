#include "osc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "osc/planarity.hpp"

namespace osc {

namespace {

using nlohmann::json;

std::uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

InstanceMeta make_meta(std::string model, json params, std::uint64_t seed) {
    InstanceMeta m;
    m.model = std::move(model);
    m.params = std::move(params);
    m.seed = seed;
    return m;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Simple k-regular graph by pairing points uniformly, only ever pairing two points that give a
// new non-loop edge; a dead end (no suitable pair left) restarts from scratch.
std::vector<std::pair<int, int>> regular_pairs(int n, int k, Rng& rng) {
    constexpr int max_restarts = 1000;
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        std::vector<int> points;
        points.reserve(static_cast<std::size_t>(n) * k);
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < k; ++c) points.push_back(v);
        std::unordered_set<std::uint64_t> present;
        std::vector<std::pair<int, int>> edges;
        bool stuck = false;
        while (!points.empty() && !stuck) {
            const std::size_t m = points.size();
            bool placed = false;
            for (int tries = 0; tries < 64 && !placed; ++tries) {
                const std::size_t a = uniform_below(rng, m);
                std::size_t b = uniform_below(rng, m - 1);
                if (b >= a) ++b;
                const int u = points[a], v = points[b];
                if (u == v || present.count(pair_key(u, v))) continue;
                present.insert(pair_key(u, v));
                edges.emplace_back(std::min(u, v), std::max(u, v));
                const std::size_t hi = std::max(a, b), lo = std::min(a, b);
                points[hi] = points.back();
                points.pop_back();
                points[lo] = points.back();
                points.pop_back();
                placed = true;
            }
            if (placed) continue;
            // Many rejections: check whether any suitable pair is left at all.
            std::vector<int> remaining(points);
            std::sort(remaining.begin(), remaining.end());
            remaining.erase(std::unique(remaining.begin(), remaining.end()), remaining.end());
            bool any = false;
            for (std::size_t x = 0; x < remaining.size() && !any; ++x)
                for (std::size_t y = x + 1; y < remaining.size() && !any; ++y)
                    if (!present.count(pair_key(remaining[x], remaining[y]))) any = true;
            stuck = !any;
        }
        if (!stuck) return edges;
    }
    throw std::runtime_error("random regular pairing failed after " + std::to_string(max_restarts) + " restarts");
}

std::vector<Edge> weighted(const std::vector<std::pair<int, int>>& pairs, const CouplingDist& dist, Rng& rng) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) edges.push_back({a, b, dist.sample(rng)});
    return edges;
}

std::vector<std::pair<int, int>> torus_pairs(int rows, int cols) {
    std::vector<std::pair<int, int>> pairs;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const int v = r * cols + c;
            pairs.emplace_back(v, r * cols + (c + 1) % cols);
            pairs.emplace_back(v, ((r + 1) % rows) * cols + c);
        }
    return pairs;
}

std::vector<std::pair<int, int>> complete_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
}

std::vector<std::pair<int, int>> ladder_pairs(int n_half) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n_half; ++i) {
        pairs.emplace_back(i, (i + 1) % n_half);
        pairs.emplace_back(n_half + i, n_half + (i + 1) % n_half);
        pairs.emplace_back(i, n_half + i);
    }
    return pairs;
}

// Draws a double-edge swap on `edges`; returns false when the draw is rejected.
struct SwapDraw {
    std::size_t first, second;
    Edge add_a, add_b;
};

bool draw_swap(const std::vector<Edge>& edges, const std::vector<std::size_t>& first_pool,
               const std::vector<std::size_t>& second_pool, const std::unordered_set<std::uint64_t>& present, Rng& rng,
               SwapDraw& out) {
    const std::size_t x = first_pool[uniform_below(rng, first_pool.size())];
    const std::size_t y = second_pool[uniform_below(rng, second_pool.size())];
    if (x == y) return false;
    const Edge& e1 = edges[x];
    const Edge& e2 = edges[y];
    const bool cross = (rng() >> 63) != 0;
    const int a = e1.i, b = e1.j;
    const int c = cross ? e2.j : e2.i, d = cross ? e2.i : e2.j;
    if (a == c || b == d) return false;
    if (present.count(pair_key(a, c)) || present.count(pair_key(b, d))) return false;
    out.first = x;
    out.second = y;
    out.add_a = {std::min(a, c), std::max(a, c), e1.w};
    out.add_b = {std::min(b, d), std::max(b, d), e2.w};
    return true;
}

}  // namespace

// ---------------------------------------------------------------- distributions

double CouplingDist::sample(Rng& rng) const {
    switch (kind) {
        case Kind::unweighted: return -1.0;
        case Kind::bimodal: return (rng() >> 63) ? 1.0 : -1.0;
        case Kind::gaussian: return mean + std::sqrt(variance) * standard_normal(rng);
    }
    return 0.0;
}

std::string CouplingDist::name() const {
    switch (kind) {
        case Kind::unweighted: return "unweighted";
        case Kind::bimodal: return "bimodal";
        case Kind::gaussian: return "gaussian";
    }
    return "?";
}

CouplingDist CouplingDist::parse(const std::string& name) {
    if (name == "unweighted") return unweighted();
    if (name == "bimodal") return bimodal();
    if (name == "gaussian") return gaussian();
    throw std::invalid_argument("unknown distribution '" + name + "'");
}

// ---------------------------------------------------------------- generators

IsingInstance gen_mobius_ladder(int n_half) {
    require(n_half >= 2, "mobius ladder needs n_half >= 2");
    const int n = 2 * n_half;
    IsingInstance inst = gen_circulant(n, {1, n_half}, {-1.0, -1.0});
    inst.meta() = make_meta("mobius", json{{"n_half", n_half}}, 0);
    return inst;
}

IsingInstance gen_circulant(int n, const std::vector<int>& offsets, const std::vector<double>& weights) {
    require(n >= 1, "circulant needs N >= 1");
    require(offsets.size() == weights.size(), "one weight per offset is required");
    std::vector<int> sorted(offsets);
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "duplicate circulant offset");
    std::vector<Edge> edges;
    for (std::size_t t = 0; t < offsets.size(); ++t) {
        const int d = offsets[t];
        require(d >= 1 && 2 * d <= n, "circulant offset " + std::to_string(d) + " outside [1, N/2]");
        const int count = (2 * d == n) ? d : n;
        for (int i = 0; i < count; ++i) edges.push_back({i, (i + d) % n, weights[t]});
    }
    return IsingInstance(n, std::move(edges), Vector(),
                         make_meta("circulant", json{{"N", n}, {"offsets", offsets}, {"weights", weights}}, 0));
}

std::vector<int> random_circulant_offsets(int n, int k, Rng& rng) {
    require(k >= 1 && k < n, "circulant degree must satisfy 1 <= k < N");
    require(k % 2 == 0 || n % 2 == 0, "odd degree needs even N");
    const int max_pair_offset = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
    std::vector<int> pool(static_cast<std::size_t>(max_pair_offset));
    std::iota(pool.begin(), pool.end(), 1);
    const int pairs = k / 2;
    // partial Fisher-Yates
    for (int t = 0; t < pairs; ++t) {
        const std::size_t r = t + uniform_below(rng, pool.size() - t);
        std::swap(pool[t], pool[r]);
    }
    std::vector<int> offsets(pool.begin(), pool.begin() + pairs);
    if (k % 2 == 1) offsets.push_back(n / 2);
    std::sort(offsets.begin(), offsets.end());
    return offsets;
}

IsingInstance gen_random_circulant(int n, int k, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    const std::vector<int> offsets = random_circulant_offsets(n, k, rng);
    IsingInstance inst = gen_circulant(n, offsets, std::vector<double>(offsets.size(), -1.0));
    inst.meta() = make_meta("random_circulant", json{{"N", n}, {"k", k}, {"offsets", offsets}}, seed);
    return inst;
}

IsingInstance gen_random_regular(int n, int k, const CouplingDist& dist, std::uint64_t seed) {
    require(n >= 1 && k >= 0 && k < n, "random regular graph needs 0 <= k < N");
    require((static_cast<long long>(n) * k) % 2 == 0, "N * k must be even");
    Rng rng = make_rng(seed);
    const auto pairs = regular_pairs(n, k, rng);
    return IsingInstance(n, weighted(pairs, dist, rng), Vector(),
                         make_meta("random_regular", json{{"N", n}, {"k", k}, {"dist", dist.name()}}, seed));
}

IsingInstance gen_sk(int n, const CouplingDist& dist, std::uint64_t seed) {
    require(n >= 2, "SK model needs N >= 2");
    Rng rng = make_rng(seed);
    return IsingInstance(n, weighted(complete_pairs(n), dist, rng), Vector(),
                         make_meta("sk", json{{"N", n}, {"dist", dist.name()}}, seed));
}

std::pair<IsingInstance, MattisSeed> gen_mattis(const MattisTopology& topology, const CouplingDist& dist,
                                                std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::vector<std::pair<int, int>> pairs;
    int n = 0;
    json params;
    switch (topology.kind) {
        case MattisTopology::Kind::complete:
            require(topology.n >= 2, "Mattis complete topology needs N >= 2");
            n = topology.n;
            pairs = complete_pairs(n);
            params = {{"topology", "complete"}, {"N", n}};
            break;
        case MattisTopology::Kind::torus:
            require(topology.rows >= 3 && topology.cols >= 3, "torus needs rows, cols >= 3");
            n = topology.rows * topology.cols;
            pairs = torus_pairs(topology.rows, topology.cols);
            params = {{"topology", "torus"}, {"rows", topology.rows}, {"cols", topology.cols}};
            break;
        case MattisTopology::Kind::regular:
            require(topology.k >= 0 && topology.k < topology.n && (topology.n * topology.k) % 2 == 0,
                    "invalid regular topology");
            n = topology.n;
            pairs = regular_pairs(n, topology.k, rng);
            params = {{"topology", "regular"}, {"N", n}, {"k", topology.k}};
            break;
    }
    std::vector<int> eps(static_cast<std::size_t>(n));
    for (int& e : eps) {
        switch (dist.kind) {
            case CouplingDist::Kind::unweighted: e = 1; break;
            case CouplingDist::Kind::bimodal: e = (rng() >> 63) ? 1 : -1; break;
            case CouplingDist::Kind::gaussian: e = dist.mean + std::sqrt(dist.variance) * standard_normal(rng) >= 0 ? 1 : -1; break;
        }
    }
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) edges.push_back({a, b, static_cast<double>(eps[a] * eps[b])});
    params["dist"] = dist.name();
    IsingInstance inst(n, std::move(edges), Vector(), make_meta("mattis", params, seed));
    return {std::move(inst), MattisSeed{SpinConfig(std::move(eps))}};
}

IsingInstance gen_torus(int rows, int cols, const CouplingDist& dist, std::uint64_t seed) {
    require(rows >= 3 && cols >= 3, "torus needs rows, cols >= 3");
    Rng rng = make_rng(seed);
    return IsingInstance(rows * cols, weighted(torus_pairs(rows, cols), dist, rng), Vector(),
                         make_meta("torus", json{{"rows", rows}, {"cols", cols}, {"dist", dist.name()}}, seed));
}

IsingInstance gen_chimera_bf(int cells_x, int cells_y, double p0, double p1, std::uint64_t seed) {
    require(cells_x >= 1 && cells_y >= 1, "chimera needs at least one cell");
    require(std::abs(p0 + p1 - 1.0) <= 1e-12 && p0 > p1 && p1 > 0.0, "chimera needs p0 + p1 = 1 and p0 > p1 > 0");
    const int n = 8 * cells_x * cells_y;
    auto q = [&](int y, int x, int t) { return 8 * (y * cells_x + x) + t; };
    std::vector<Edge> edges;
    for (int y = 0; y < cells_y; ++y)
        for (int x = 0; x < cells_x; ++x) {
            for (int a = 0; a < 4; ++a)
                for (int b = 4; b < 8; ++b) edges.push_back({q(y, x, a), q(y, x, b), 1.0});
            for (int t = 0; t < 4; ++t) {
                if (y + 1 < cells_y) edges.push_back({q(y, x, t), q(y + 1, x, t), 1.0});
                if (x + 1 < cells_x) edges.push_back({q(y, x, 4 + t), q(y, x + 1, 4 + t), 1.0});
            }
        }
    Rng rng = make_rng(seed);
    Vector h = Vector::Zero(n);
    while ((h.array() == 0.0).all())
        for (int i = 0; i < n; ++i) h(i) = uniform01(rng) < p1 ? 1.0 : 0.0;
    return IsingInstance(n, std::move(edges), std::move(h),
                         make_meta("chimera_bf", json{{"cells_x", cells_x}, {"cells_y", cells_y}, {"p0", p0}, {"p1", p1}}, seed));
}

IsingInstance gen_ladder_field(int n_half) {
    require(n_half >= 3, "ladder needs n_half >= 3");
    std::vector<Edge> edges;
    for (const auto& [a, b] : ladder_pairs(n_half)) edges.push_back({a, b, -1.0});
    return IsingInstance(2 * n_half, std::move(edges), Vector::Constant(2 * n_half, -1.0),
                         make_meta("ladder_field", json{{"n_half", n_half}}, 0));
}

IsingInstance gen_planar3r_field(int n, int rewire_count, std::uint64_t seed) {
    require(n >= 6 && n % 2 == 0, "planar cubic graph needs even N >= 6");
    require(rewire_count >= 0, "rewire count must be non-negative");
    const IsingInstance base = gen_ladder_field(n / 2);
    std::vector<Edge> edges = base.edges();
    std::unordered_set<std::uint64_t> present, original;
    for (const Edge& e : edges) {
        present.insert(pair_key(e.i, e.j));
        original.insert(pair_key(e.i, e.j));
    }
    Rng rng = make_rng(seed);
    constexpr int attempts_per_swap = 20000;
    for (int done = 0; done < rewire_count; ++done) {
        std::vector<std::size_t> pool;
        for (std::size_t t = 0; t < edges.size(); ++t)
            if (original.count(pair_key(edges[t].i, edges[t].j))) pool.push_back(t);
        if (pool.size() < 2) {
            pool.resize(edges.size());
            std::iota(pool.begin(), pool.end(), std::size_t{0});
        }
        std::vector<std::size_t> all(edges.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        bool accepted = false;
        for (int attempt = 0; attempt < 2 * attempts_per_swap && !accepted; ++attempt) {
            // second half: the remaining originals may admit no planar swap
            const std::vector<std::size_t>& from = attempt < attempts_per_swap ? pool : all;
            SwapDraw s;
            if (!draw_swap(edges, from, from, present, rng, s)) continue;
            std::vector<std::pair<int, int>> candidate;
            for (std::size_t t = 0; t < edges.size(); ++t)
                if (t != s.first && t != s.second) candidate.emplace_back(edges[t].i, edges[t].j);
            candidate.emplace_back(s.add_a.i, s.add_a.j);
            candidate.emplace_back(s.add_b.i, s.add_b.j);
            if (!is_planar(n, candidate)) continue;
            present.erase(pair_key(edges[s.first].i, edges[s.first].j));
            present.erase(pair_key(edges[s.second].i, edges[s.second].j));
            present.insert(pair_key(s.add_a.i, s.add_a.j));
            present.insert(pair_key(s.add_b.i, s.add_b.j));
            edges[s.first] = s.add_a;
            edges[s.second] = s.add_b;
            accepted = true;
        }
        if (!accepted) throw std::runtime_error("planar rewiring budget exhausted");
    }
    return IsingInstance(n, std::move(edges), Vector::Constant(n, -1.0),
                         make_meta("planar3r_field", json{{"N", n}, {"rewire_count", rewire_count}}, seed));
}

IsingInstance generate(const ModelSpec& spec, std::uint64_t seed) {
    struct Visitor {
        std::uint64_t seed;
        IsingInstance operator()(const MobiusSpec& s) const { return gen_mobius_ladder(s.n_half); }
        IsingInstance operator()(const CirculantSpec& s) const { return gen_circulant(s.n, s.offsets, s.weights); }
        IsingInstance operator()(const RandomCirculantSpec& s) const { return gen_random_circulant(s.n, s.k, seed); }
        IsingInstance operator()(const RandomRegularSpec& s) const { return gen_random_regular(s.n, s.k, s.dist, seed); }
        IsingInstance operator()(const SkSpec& s) const { return gen_sk(s.n, s.dist, seed); }
        IsingInstance operator()(const MattisSpec& s) const { return gen_mattis(s.topology, s.dist, seed).first; }
        IsingInstance operator()(const TorusSpec& s) const { return gen_torus(s.rows, s.cols, s.dist, seed); }
        IsingInstance operator()(const ChimeraBfSpec& s) const {
            return gen_chimera_bf(s.cells_x, s.cells_y, s.p0, s.p1, seed);
        }
        IsingInstance operator()(const LadderFieldSpec& s) const { return gen_ladder_field(s.n_half); }
        IsingInstance operator()(const Planar3rFieldSpec& s) const {
            return gen_planar3r_field(s.n, s.rewire_count, seed);
        }
    };
    return std::visit(Visitor{seed}, spec);
}

// ---------------------------------------------------------------- transformations

RewireResult rewire(const IsingInstance& instance, int count, std::uint64_t seed, bool restrict_to_original) {
    require(count >= 0, "rewire count must be non-negative");
    std::vector<Edge> edges = instance.edges();
    std::unordered_set<std::uint64_t> present, original;
    for (const Edge& e : edges) {
        present.insert(pair_key(e.i, e.j));
        original.insert(pair_key(e.i, e.j));
    }
    if (count > 0 && edges.size() < 2) throw std::invalid_argument("rewiring needs at least two edges");

    Rng rng = make_rng(seed);
    // Pairs are drawn among surviving original edges first; when those admit no valid swap,
    // one original edge is paired with any edge, and finally any two edges are used.
    constexpr int attempts_per_stage = 20000;
    std::vector<std::size_t> originals, everything(edges.size());
    std::iota(everything.begin(), everything.end(), std::size_t{0});
    for (int done = 0; done < count; ++done) {
        originals.clear();
        if (restrict_to_original)
            for (std::size_t t = 0; t < edges.size(); ++t)
                if (original.count(pair_key(edges[t].i, edges[t].j))) originals.push_back(t);
        const std::vector<std::size_t>* stages[3][2] = {
            {&originals, &originals}, {&originals, &everything}, {&everything, &everything}};
        bool accepted = false;
        for (const auto& stage : stages) {
            if (stage[0]->empty() || stage[1]->empty()) continue;
            for (int attempt = 0; attempt < attempts_per_stage && !accepted; ++attempt) {
                SwapDraw s;
                if (!draw_swap(edges, *stage[0], *stage[1], present, rng, s)) continue;
                present.erase(pair_key(edges[s.first].i, edges[s.first].j));
                present.erase(pair_key(edges[s.second].i, edges[s.second].j));
                present.insert(pair_key(s.add_a.i, s.add_a.j));
                present.insert(pair_key(s.add_b.i, s.add_b.j));
                edges[s.first] = s.add_a;
                edges[s.second] = s.add_b;
                accepted = true;
            }
            if (accepted) break;
        }
        if (!accepted) throw std::runtime_error("no eligible edge pair for rewiring");
    }

    RewireResult out;
    out.swaps = count;
    int kept = 0;
    for (const Edge& e : edges)
        if (original.count(pair_key(e.i, e.j))) ++kept;
    out.original_edges_rewired = static_cast<int>(original.size()) - kept;
    out.rewired_fraction =
        original.empty() ? 0.0 : static_cast<double>(out.original_edges_rewired) / static_cast<double>(original.size());
    InstanceMeta meta = instance.meta();
    meta.params["rewire"] = {{"swaps", count},
                             {"seed", seed},
                             {"restrict_to_original", restrict_to_original},
                             {"rewired_percent", 100.0 * out.rewired_fraction}};
    out.instance = IsingInstance(instance.size(), std::move(edges), instance.fields(), std::move(meta));
    return out;
}

int swaps_for_fraction(const IsingInstance& instance, double fraction) {
    require(fraction >= 0.0 && fraction <= 1.0, "rewire fraction must lie in [0, 1]");
    return static_cast<int>(std::lround(fraction * static_cast<double>(instance.edge_count()) / 2.0));
}

IsingInstance replace_edges(const IsingInstance& instance, const std::vector<std::pair<int, int>>& removed,
                            const std::vector<std::pair<int, int>>& added) {
    require(removed.size() == added.size(), "replace_edges needs as many added as removed edges");
    std::vector<Edge> edges = instance.edges();
    std::vector<double> weights;
    for (const auto& [a, b] : removed) {
        auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
            return e.i == std::min(a, b) && e.j == std::max(a, b);
        });
        require(it != edges.end(), "edge (" + std::to_string(a) + ", " + std::to_string(b) + ") not present");
        weights.push_back(it->w);
        edges.erase(it);
    }
    for (std::size_t t = 0; t < added.size(); ++t) edges.push_back({added[t].first, added[t].second, weights[t]});
    InstanceMeta meta = instance.meta();
    meta.params["replaced_edges"] = json{{"removed", removed}, {"added", added}};
    return IsingInstance(instance.size(), std::move(edges), instance.fields(), std::move(meta));
}

IsingInstance absorb_fields(const IsingInstance& instance) {
    const int n = instance.size();
    std::vector<Edge> edges;
    edges.reserve(instance.edge_count() + static_cast<std::size_t>(n));
    for (const Edge& e : instance.edges()) edges.push_back({e.i + 1, e.j + 1, e.w});
    for (int i = 0; i < n; ++i)
        if (instance.fields()(i) != 0.0) edges.push_back({0, i + 1, instance.fields()(i)});
    InstanceMeta meta = instance.meta();
    meta.params["absorbed_fields"] = true;
    return IsingInstance(n + 1, std::move(edges), Vector(), std::move(meta));
}

}  // namespace osc
