#ifndef OSC_JACOBI_HPP
#define OSC_JACOBI_HPP

#include <cmath>

#include <Eigen/Core>

namespace osc {

template <typename Scalar>
struct JacobiResult {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;  // unsorted, aligned with columns below
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
    int sweeps = 0;
    bool converged = false;
};

/// Cyclic Jacobi eigenvalue iteration for a dense symmetric matrix.
///
/// Rotations sweep every (p, q) pair in row order; a sweep ends the iteration once the
/// off-diagonal Frobenius norm drops below `rel_tol` times the matrix norm. Only the
/// lower triangle of `input` is trusted.
template <typename Derived>
JacobiResult<typename Derived::Scalar> cyclic_jacobi(const Eigen::MatrixBase<Derived>& input, int max_sweeps = 60,
                                                      typename Derived::Scalar rel_tol = 1e-15) {
    using Scalar = typename Derived::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = input.rows();
    eigen_assert(input.cols() == n);

    Mat a = input.template selfadjointView<Eigen::Lower>();
    JacobiResult<Scalar> out;
    out.eigenvectors = Mat::Identity(n, n);
    const Scalar scale = a.norm();
    const Scalar threshold = rel_tol * (scale > Scalar(0) ? scale : Scalar(1));

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        Scalar off = 0;
        for (Eigen::Index q = 1; q < n; ++q)
            for (Eigen::Index p = 0; p < q; ++p) off += a(p, q) * a(p, q);
        if (std::sqrt(2 * off) <= threshold) {
            out.converged = true;
            out.sweeps = sweep;
            break;
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar(0)) continue;
                const Scalar app = a(p, p), aqq = a(q, q);
                // After a few sweeps, drop elements too small to move either diagonal entry.
                const Scalar g = Scalar(100) * std::abs(apq);
                if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0;
                    continue;
                }
                const Scalar theta = (aqq - app) / (2 * apq);
                const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                                 (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
                const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
                const Scalar s = t * c;

                auto col_p = a.col(p);
                auto col_q = a.col(q);
                for (Eigen::Index r = 0; r < n; ++r) {
                    const Scalar arp = col_p(r), arq = col_q(r);
                    col_p(r) = c * arp - s * arq;
                    col_q(r) = s * arp + c * arq;
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0;
                a(q, p) = 0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    a(p, r) = col_p(r);
                    a(q, r) = col_q(r);
                }
                auto vp = out.eigenvectors.col(p);
                auto vq = out.eigenvectors.col(q);
                for (Eigen::Index r = 0; r < n; ++r) {
                    const Scalar x = vp(r), y = vq(r);
                    vp(r) = c * x - s * y;
                    vq(r) = s * x + c * y;
                }
            }
        }
        out.sweeps = sweep + 1;
    }
    out.eigenvalues = a.diagonal();
    return out;
}

}  // namespace osc

#endif  // OSC_JACOBI_HPP
