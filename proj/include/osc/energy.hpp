#ifndef OSC_ENERGY_HPP
#define OSC_ENERGY_HPP

#include "osc/core.hpp"

namespace osc {

/// H(s) = -sum_edges w s_i s_j - sum_i h_i s_i. Throws std::invalid_argument on size mismatch.
double energy(const IsingInstance& instance, const SpinConfig& s);

/// Energy of sign(v) for a real amplitude vector (sign(0) = +1).
double sign_energy(const IsingInstance& instance, const Eigen::Ref<const Vector>& v);

/// Number of cut edges, (|E| - sum_edges s_i s_j) / 2. Meaningful for unweighted antiferromagnetic instances.
double maxcut_value(const IsingInstance& instance, const SpinConfig& s);

struct Frustration {
    int count = 0;
    double fraction = 0.0;
};

/// An edge is frustrated when w s_i s_j < 0: ferromagnetic couplings want alignment,
/// antiferromagnetic ones anti-alignment. Fields are not edges and are not counted.
Frustration frustration(const IsingInstance& instance, const SpinConfig& s);

/// Local fields L_i = sum_j J_ij s_j + h_i. Flipping spin i changes H by 2 s_i L_i.
Vector local_fields(const IsingInstance& instance, const SpinConfig& s);

/// Greedy single-flip descent; returns the final energy. Flips the steepest improving spin
/// until none improves.
double descend(const IsingInstance& instance, SpinConfig& s);

}  // namespace osc

#endif  // OSC_ENERGY_HPP
