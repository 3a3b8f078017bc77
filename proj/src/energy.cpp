#include "osc/energy.hpp"

#include <stdexcept>

namespace osc {

namespace {

void check_size(const IsingInstance& instance, int n) {
    if (n != instance.size()) throw std::invalid_argument("spin configuration length differs from instance size");
}

}  // namespace

double energy(const IsingInstance& instance, const SpinConfig& s) {
    check_size(instance, s.size());
    double e = 0.0;
    for (const Edge& edge : instance.edges()) e -= edge.w * s[edge.i] * s[edge.j];
    const Vector& h = instance.fields();
    for (int i = 0; i < instance.size(); ++i) e -= h(i) * s[i];
    return e;
}

double sign_energy(const IsingInstance& instance, const Eigen::Ref<const Vector>& v) {
    return energy(instance, SpinConfig::from_signs(v));
}

double maxcut_value(const IsingInstance& instance, const SpinConfig& s) {
    check_size(instance, s.size());
    double aligned = 0.0;
    for (const Edge& edge : instance.edges()) aligned += s[edge.i] * s[edge.j];
    return (static_cast<double>(instance.edge_count()) - aligned) / 2.0;
}

Frustration frustration(const IsingInstance& instance, const SpinConfig& s) {
    check_size(instance, s.size());
    Frustration f;
    for (const Edge& edge : instance.edges())
        if (edge.w * s[edge.i] * s[edge.j] < 0.0) ++f.count;
    f.fraction = instance.edge_count() == 0 ? 0.0 : static_cast<double>(f.count) / static_cast<double>(instance.edge_count());
    return f;
}

Vector local_fields(const IsingInstance& instance, const SpinConfig& s) {
    check_size(instance, s.size());
    Vector L = instance.fields();
    for (const Edge& edge : instance.edges()) {
        L(edge.i) += edge.w * s[edge.j];
        L(edge.j) += edge.w * s[edge.i];
    }
    return L;
}

double descend(const IsingInstance& instance, SpinConfig& s) {
    Vector L = local_fields(instance, s);
    const Adjacency& adj = instance.adjacency();
    for (;;) {
        int best = -1;
        double best_delta = 0.0;
        for (int i = 0; i < s.size(); ++i) {
            const double delta = 2.0 * s[i] * L(i);
            if (delta < best_delta - 1e-12) {
                best_delta = delta;
                best = i;
            }
        }
        if (best < 0) break;
        const int old = s[best];
        s.flip(best);
        for (int a = adj.offsets[best]; a < adj.offsets[best + 1]; ++a)
            L(adj.neighbors[a]) -= 2.0 * adj.weights[a] * old;
    }
    return energy(instance, s);
}

}  // namespace osc
