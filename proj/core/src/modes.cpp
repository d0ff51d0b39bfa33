#include "netgain/modes.hpp"

#include <cmath>
#include <string>

#include "netgain/errors.hpp"

namespace netgain {

void ModeSet::validate() const {
    if (M < 1 || n < 1) {
        throw ValidationError("mode set needs M >= 1 and n >= 1 (got M=" + std::to_string(M) +
                              ", n=" + std::to_string(n) + ")");
    }
    if (static_cast<int>(modes.size()) != M) {
        throw DimensionError("mode set declares M=" + std::to_string(M) + " but holds " +
                             std::to_string(modes.size()) + " matrices");
    }
    for (int s = 0; s < M; ++s) {
        if (modes[s].rows() != dim() || modes[s].cols() != dim()) {
            throw DimensionError("mode " + std::to_string(s + 1) + " is " +
                                 std::to_string(modes[s].rows()) + "x" +
                                 std::to_string(modes[s].cols()) + ", expected " +
                                 std::to_string(dim()) + "x" + std::to_string(dim()));
        }
        if (!modes[s].allFinite()) {
            throw ValidationError("mode " + std::to_string(s + 1) + " has non-finite entries");
        }
    }
}

Eigen::MatrixXd build_mode(const DiscretePlant& plant, const GainSchedule& gains, int sigma) {
    plant.validate();
    gains.validate_against(plant);
    if (sigma < 1 || sigma > gains.M) {
        throw ValidationError("mode index sigma=" + std::to_string(sigma) +
                              " out of range 1.." + std::to_string(gains.M));
    }

    const int n = plant.n();
    const int M = gains.M;
    Eigen::MatrixXd Phi = Eigen::MatrixXd::Zero(n * M, n * M);

    // History shift: block (r, r-1) = I for r = 2..M.
    for (int r = 2; r <= M; ++r) {
        Phi.block((r - 1) * n, (r - 2) * n, n, n).setIdentity();
    }

    if (sigma == 1) {
        Phi.topLeftCorner(n, n) = plant.F - plant.G * gains.K[0];
    } else {
        Phi.topLeftCorner(n, n) = plant.F;
        Phi.block(0, (sigma - 1) * n, n, n) = -plant.G * gains.K[sigma - 1];
    }
    return Phi;
}

ModeSet build_all_modes(const DiscretePlant& plant, const GainSchedule& gains) {
    ModeSet set;
    set.M = gains.M;
    set.n = plant.n();
    set.modes.reserve(gains.M);
    for (int sigma = 1; sigma <= gains.M; ++sigma) {
        set.modes.push_back(build_mode(plant, gains, sigma));
    }
    return set;
}

namespace {

// Parlett-Reinsch balancing restricted to power-of-two scale factors, so the
// similarity transform is exact in floating point.
void balance_in_place(Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(A(j, i));
                r += std::abs(A(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c > r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (f != 1.0 && c + r < 0.95 * s) {
                converged = false;
                A.col(i) *= f;
                A.row(i) /= f;
            }
        }
    }
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols() || A.rows() < 1) {
        throw DimensionError("spectral radius needs a non-empty square matrix (got " +
                             std::to_string(A.rows()) + "x" + std::to_string(A.cols()) + ")");
    }
    if (!A.allFinite()) throw ValidationError("matrix has non-finite entries");

    Eigen::MatrixXd B = A;
    balance_in_place(B);
    Eigen::EigenSolver<Eigen::MatrixXd> es(B, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace netgain
