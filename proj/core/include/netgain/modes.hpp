#pragma once

#include <vector>

#include <Eigen/Dense>

#include "netgain/plant.hpp"

namespace netgain {

/// The closed loop under dropouts is a switched system on the stacked state
/// [x(k); x(k-1); ...; x(k-M+1)]. Mode sigma is active when the actuator
/// runs on a packet that is sigma-1 steps old, and applies the transition
///
///   x(k+1) = (F - G K_1) x(k)            for sigma = 1
///   x(k+1) = F x(k) - G K_sigma x(k-sigma+1)   for sigma >= 2
///
/// with the remaining block rows shifting history down by one.
struct ModeSet {
    int M = 0;  ///< mode count = schedule length
    int n = 0;  ///< plant state dimension (block size)
    std::vector<Eigen::MatrixXd> modes;  ///< M matrices, each (n*M) x (n*M)

    int dim() const { return n * M; }
    void validate() const;
};

/// Builds the transition matrix of mode `sigma` (1-based, 1..M).
/// Throws DimensionError on plant/gain mismatch, ValidationError when sigma
/// is out of range.
Eigen::MatrixXd build_mode(const DiscretePlant& plant, const GainSchedule& gains, int sigma);

/// All M modes in order.
ModeSet build_all_modes(const DiscretePlant& plant, const GainSchedule& gains);

/// Largest eigenvalue magnitude of a square matrix, computed by a dense
/// nonsymmetric eigendecomposition after an exact power-of-two balancing
/// pass.
double spectral_radius(const Eigen::MatrixXd& A);

}  // namespace netgain
