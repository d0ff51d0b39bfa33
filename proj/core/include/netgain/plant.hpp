#pragma once

#include <vector>

#include <Eigen/Dense>

namespace netgain {

/// Discrete-time LTI plant x(k+1) = F x(k) + G u(k).
struct DiscretePlant {
    Eigen::MatrixXd F;  ///< n x n state transition
    Eigen::MatrixXd G;  ///< n x m input map
    double Ts = 0.0;    ///< sampling period in seconds (metadata only)

    int n() const { return static_cast<int>(F.rows()); }
    int m() const { return static_cast<int>(G.cols()); }

    /// Throws DimensionError / ValidationError on bad shapes or non-finite entries.
    void validate() const;
};

/// Ordered state-feedback gains K_1..K_M, one per buffer age. The packet
/// issued at step k carries the controls -K_q x(k) for q = 1..M, so the
/// actuator can ride out up to M-1 consecutive packet losses.
struct GainSchedule {
    int M = 0;                      ///< schedule length = dropout gap bound
    std::vector<Eigen::MatrixXd> K; ///< exactly M gains, each m x n

    void validate() const;
    /// Additionally checks each gain against the plant dimensions.
    void validate_against(const DiscretePlant& plant) const;
};

/// Schedule that applies the same gain at every buffer age (no prediction).
GainSchedule constant_schedule(const Eigen::MatrixXd& gain, int M);

}  // namespace netgain
