#include "osc/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace osc {

IsingInstance::IsingInstance(int n, std::vector<Edge> edges, Vector fields, InstanceMeta meta)
    : n_(n), edges_(std::move(edges)), fields_(std::move(fields)), meta_(std::move(meta)) {
    if (n_ <= 0) throw std::invalid_argument("instance needs at least one spin");
    if (fields_.size() == 0) fields_ = Vector::Zero(n_);
    if (fields_.size() != n_) throw std::invalid_argument("field vector length differs from spin count");
    if (!fields_.allFinite()) throw std::invalid_argument("non-finite field");

    for (Edge& e : edges_) {
        if (e.i == e.j) throw std::invalid_argument("self-loop on spin " + std::to_string(e.i));
        if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (!std::isfinite(e.w)) throw std::invalid_argument("non-finite coupling");
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::erase_if(edges_, [](const Edge& e) { return e.w == 0.0; });
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    for (std::size_t k = 1; k < edges_.size(); ++k) {
        if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
            throw std::invalid_argument("duplicate pair (" + std::to_string(edges_[k].i) + ", " +
                                        std::to_string(edges_[k].j) + ")");
    }

    adj_.offsets.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
        ++adj_.offsets[static_cast<std::size_t>(e.i) + 1];
        ++adj_.offsets[static_cast<std::size_t>(e.j) + 1];
    }
    for (int v = 0; v < n_; ++v) adj_.offsets[v + 1] += adj_.offsets[v];
    const std::size_t m2 = 2 * edges_.size();
    adj_.neighbors.resize(m2);
    adj_.weights.resize(m2);
    adj_.edge_ids.resize(m2);
    std::vector<int> cursor(adj_.offsets.begin(), adj_.offsets.end() - 1);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const Edge& e = edges_[k];
        const int a = cursor[e.i]++;
        adj_.neighbors[a] = e.j;
        adj_.weights[a] = e.w;
        adj_.edge_ids[a] = static_cast<int>(k);
        const int b = cursor[e.j]++;
        adj_.neighbors[b] = e.i;
        adj_.weights[b] = e.w;
        adj_.edge_ids[b] = static_cast<int>(k);
    }
}

bool IsingInstance::has_fields() const { return (fields_.array() != 0.0).any(); }

bool IsingInstance::integral() const {
    auto is_int = [](double x) { return std::nearbyint(x) == x; };
    for (const Edge& e : edges_)
        if (!is_int(e.w)) return false;
    for (Eigen::Index i = 0; i < fields_.size(); ++i)
        if (!is_int(fields_(i))) return false;
    return true;
}

Matrix IsingInstance::coupling_matrix() const {
    Matrix J = Matrix::Zero(n_, n_);
    for (const Edge& e : edges_) {
        J(e.i, e.j) = e.w;
        J(e.j, e.i) = e.w;
    }
    return J;
}

std::vector<int> IsingInstance::degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) d[v] = adj_.degree(v);
    return d;
}

double IsingInstance::weight(int i, int j) const {
    if (i < 0 || i >= n_) return 0.0;
    for (int a = adj_.offsets[i]; a < adj_.offsets[i + 1]; ++a)
        if (adj_.neighbors[a] == j) return adj_.weights[a];
    return 0.0;
}

SpinConfig::SpinConfig(std::vector<int> s) : s_(std::move(s)) {
    for (int v : s_)
        if (v != 1 && v != -1) throw std::invalid_argument("spin value must be +1 or -1");
}

void SpinConfig::set(int i, int value) {
    if (value != 1 && value != -1) throw std::invalid_argument("spin value must be +1 or -1");
    s_[static_cast<std::size_t>(i)] = value;
}

Vector SpinConfig::as_vector() const {
    Vector v(size());
    for (int i = 0; i < size(); ++i) v(i) = s_[static_cast<std::size_t>(i)];
    return v;
}

SpinConfig SpinConfig::flipped() const {
    SpinConfig out = *this;
    for (int& v : out.s_) v = -v;
    return out;
}

}  // namespace osc
