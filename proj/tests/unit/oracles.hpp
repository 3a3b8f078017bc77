#ifndef OSC_TESTS_ORACLES_HPP
#define OSC_TESTS_ORACLES_HPP

// Independent reference computations used by the unit tests. They read only the raw edge list
// and field vector and share no code with the library's evaluators.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "osc/core.hpp"

namespace oracle {

inline Eigen::MatrixXd dense_j(const osc::IsingInstance& inst) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(inst.size(), inst.size());
    for (const auto& e : inst.edges()) {
        j(e.i, e.j) = e.w;
        j(e.j, e.i) = e.w;
    }
    return j;
}

/// -(1/2) s^T J s - h^T s with the dense matrix.
inline double dense_energy(const osc::IsingInstance& inst, const std::vector<int>& s) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return -0.5 * v.dot(dense_j(inst) * v) - inst.fields().dot(v);
}

inline std::vector<int> spins_of(std::uint64_t mask, int n) {
    std::vector<int> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? -1 : 1;
    return s;
}

struct Minimum {
    double energy = std::numeric_limits<double>::infinity();
    std::uint64_t count = 0;
};

/// Plain loop over all 2^n states, energy recomputed from scratch for each.
inline Minimum enumerate(const osc::IsingInstance& inst, double tol = 1e-9) {
    const int n = inst.size();
    Minimum best;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const std::vector<int> s = spins_of(m, n);
        double e = 0;
        for (const auto& ed : inst.edges()) e -= ed.w * s[static_cast<std::size_t>(ed.i)] * s[static_cast<std::size_t>(ed.j)];
        for (int i = 0; i < n; ++i) e -= inst.fields()(i) * s[static_cast<std::size_t>(i)];
        if (e < best.energy - tol) {
            best.energy = e;
            best.count = 1;
        } else if (std::abs(e - best.energy) <= tol) {
            ++best.count;
        }
    }
    return best;
}

}  // namespace oracle

#endif  // OSC_TESTS_ORACLES_HPP
