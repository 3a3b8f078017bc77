#ifndef OSC_GENERATORS_HPP
#define OSC_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "osc/core.hpp"
#include "osc/rng.hpp"

namespace osc {

/// Coupling distribution. "Unweighted" means every coupling is -1 (antiferromagnetic MaxCut).
struct CouplingDist {
    enum class Kind { unweighted, bimodal, gaussian };
    Kind kind = Kind::unweighted;
    double mean = 0.0;
    double variance = 1.0;

    static CouplingDist unweighted() { return {}; }
    static CouplingDist bimodal() { return {Kind::bimodal, 0.0, 1.0}; }
    static CouplingDist gaussian(double mean = 0.0, double variance = 1.0) { return {Kind::gaussian, mean, variance}; }

    double sample(Rng& rng) const;
    std::string name() const;
    static CouplingDist parse(const std::string& name);
};

// ---- generator parameter blocks (the ModelSpec alternatives) ----

struct MobiusSpec { int n_half = 4; };
struct CirculantSpec {
    int n = 4;
    std::vector<int> offsets;
    std::vector<double> weights;  // one per offset
};
struct RandomCirculantSpec { int n = 30; int k = 4; };
struct RandomRegularSpec { int n = 100; int k = 3; CouplingDist dist; };
struct SkSpec { int n = 10; CouplingDist dist = CouplingDist::gaussian(); };
struct MattisTopology {
    enum class Kind { complete, torus, regular };
    Kind kind = Kind::complete;
    int n = 6;      // complete / regular
    int rows = 3;   // torus
    int cols = 3;   // torus
    int k = 3;      // regular
};
struct MattisSpec { MattisTopology topology; CouplingDist dist = CouplingDist::bimodal(); };
struct TorusSpec { int rows = 4; int cols = 4; CouplingDist dist; };
struct ChimeraBfSpec { int cells_x = 1; int cells_y = 1; double p0 = 0.9; double p1 = 0.1; };
struct LadderFieldSpec { int n_half = 3; };
struct Planar3rFieldSpec { int n = 20; int rewire_count = 0; };

using ModelSpec = std::variant<MobiusSpec, CirculantSpec, RandomCirculantSpec, RandomRegularSpec, SkSpec, MattisSpec,
                               TorusSpec, ChimeraBfSpec, LadderFieldSpec, Planar3rFieldSpec>;

/// Planted configuration returned with a Mattis instance (the eps_i variables).
struct MattisSeed {
    SpinConfig epsilon;
};

// ---- generators ----

/// Ring of N = 2 n_half spins plus antipodal chords, all couplings -1.
IsingInstance gen_mobius_ladder(int n_half);

/// Vertex i couples to (i +- d) mod N with weight w_d for every offset d.
IsingInstance gen_circulant(int n, const std::vector<int>& offsets, const std::vector<double>& weights);

/// Unweighted (w = -1) k-regular circulant with random offsets drawn from [1, N/2].
IsingInstance gen_random_circulant(int n, int k, std::uint64_t seed);

/// Offsets of a random k-regular circulant: k/2 distinct offsets from [1, ceil(N/2)-1] for even k, or
/// offset N/2 plus (k-1)/2 others for odd k (requires even N).
std::vector<int> random_circulant_offsets(int n, int k, Rng& rng);

/// Simple k-regular graph by the pairing method, rejecting loop/multi-edge pairings.
IsingInstance gen_random_regular(int n, int k, const CouplingDist& dist, std::uint64_t seed);

/// Sherrington-Kirkpatrick: complete graph with i.i.d. couplings.
IsingInstance gen_sk(int n, const CouplingDist& dist, std::uint64_t seed);

/// Mattis gauge glass J_ij = A_ij eps_i eps_j with A the ferromagnetic (+1) adjacency.
std::pair<IsingInstance, MattisSeed> gen_mattis(const MattisTopology& topology, const CouplingDist& dist, std::uint64_t seed);

/// rows x cols periodic nearest-neighbour lattice.
IsingInstance gen_torus(int rows, int cols, const CouplingDist& dist, std::uint64_t seed);

/// Ferromagnetic Chimera graph with fields h_i in {0, 1}; at least one field is 1.
IsingInstance gen_chimera_bf(int cells_x, int cells_y, double p0, double p1, std::uint64_t seed);

/// Prism graph (two n-cycles joined by rungs), w = -1, uniform field h = -1.
IsingInstance gen_ladder_field(int n_half);

/// Ladder with field, then `rewire_count` double-edge swaps each kept only if the graph stays planar.
IsingInstance gen_planar3r_field(int n, int rewire_count, std::uint64_t seed);

/// Dispatch over ModelSpec. Mattis instances drop the planted seed; use gen_mattis for it.
IsingInstance generate(const ModelSpec& spec, std::uint64_t seed);

// ---- transformations ----

struct RewireResult {
    IsingInstance instance;
    int swaps = 0;
    int original_edges_rewired = 0;
    double rewired_fraction = 0.0;  // share of the input's edges no longer present
};

/// Degree-preserving double-edge swaps. Each swap removes two edges (a,b), (c,d) and adds
/// (a,c), (b,d) or (a,d), (b,c); swaps creating loops or duplicates are resampled. With
/// restrict_to_original, the pair is drawn among edges of the input graph that are still
/// present (falling back to all edges once fewer than two remain). Weights travel with
/// the first endpoint pair.
RewireResult rewire(const IsingInstance& instance, int count, std::uint64_t seed, bool restrict_to_original = true);

/// Number of swaps that rewires `fraction` of the edges when every swap consumes two originals.
int swaps_for_fraction(const IsingInstance& instance, double fraction);

/// Replaces the edges `removed` with `added` (same weights in order). Throws if an edge to remove
/// is absent or the result is not simple.
IsingInstance replace_edges(const IsingInstance& instance, const std::vector<std::pair<int, int>>& removed,
                            const std::vector<std::pair<int, int>>& added);

/// Extends the instance by an auxiliary spin 0 coupled to former spin i (now i + 1) with weight h_i.
/// H(s) = H_ext(+1, s) and the result has zero fields.
IsingInstance absorb_fields(const IsingInstance& instance);

}  // namespace osc

#endif  // OSC_GENERATORS_HPP
