#ifndef OSC_CORE_HPP
#define OSC_CORE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace osc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One coupling J_ij, stored once per unordered pair with i < j.
struct Edge {
    int i = 0;
    int j = 0;
    double w = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Provenance of a generated instance: model tag, generator parameters, seed.
struct InstanceMeta {
    std::string model = "custom";
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
};

/// Compressed adjacency of an instance; every edge appears in both endpoint rows.
struct Adjacency {
    std::vector<int> offsets;    // n + 1 entries
    std::vector<int> neighbors;  // 2 |edges| entries
    std::vector<double> weights;
    std::vector<int> edge_ids;   // index into IsingInstance::edges()

    int degree(int v) const { return offsets[v + 1] - offsets[v]; }
};

/// Ising Hamiltonian H(s) = -sum_{i<j} w_ij s_i s_j - sum_i h_i s_i.
///
/// Edges are normalised to i < j, sorted lexicographically, and zero weights are
/// dropped. Construction throws std::invalid_argument on self-loops, duplicate
/// pairs, out-of-range endpoints, non-finite values, or a field vector of the
/// wrong length.
class IsingInstance {
public:
    IsingInstance() = default;
    IsingInstance(int n, std::vector<Edge> edges, Vector fields = Vector(), InstanceMeta meta = {});

    int size() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    const Vector& fields() const { return fields_; }
    const InstanceMeta& meta() const { return meta_; }
    InstanceMeta& meta() { return meta_; }
    const Adjacency& adjacency() const { return adj_; }

    bool has_fields() const;

    /// True when every coupling and field is an integer.
    bool integral() const;

    /// Dense symmetric J with zero diagonal (J_ij = J_ji = w).
    Matrix coupling_matrix() const;

    /// Degree of every vertex.
    std::vector<int> degrees() const;

    /// Weight of pair (i, j), or 0 if absent.
    double weight(int i, int j) const;

    friend bool operator==(const IsingInstance& a, const IsingInstance& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.fields_ == b.fields_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    Vector fields_;
    InstanceMeta meta_;
    Adjacency adj_;
};

/// A +-1 assignment of every spin.
class SpinConfig {
public:
    SpinConfig() = default;
    explicit SpinConfig(std::vector<int> s);

    static SpinConfig all_up(int n) { return SpinConfig(std::vector<int>(static_cast<std::size_t>(n), 1)); }

    /// sign(v) with sign(0) = +1.
    template <typename Derived>
    static SpinConfig from_signs(const Eigen::DenseBase<Derived>& v) {
        std::vector<int> s(static_cast<std::size_t>(v.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) s[static_cast<std::size_t>(i)] = v(i) >= 0 ? 1 : -1;
        SpinConfig out;
        out.s_ = std::move(s);
        return out;
    }

    int size() const { return static_cast<int>(s_.size()); }
    int operator[](int i) const { return s_[static_cast<std::size_t>(i)]; }
    void flip(int i) { s_[static_cast<std::size_t>(i)] = -s_[static_cast<std::size_t>(i)]; }
    void set(int i, int value);

    const std::vector<int>& values() const { return s_; }
    Vector as_vector() const;
    SpinConfig flipped() const;

    friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

private:
    std::vector<int> s_;
};

}  // namespace osc

#endif  // OSC_CORE_HPP
