#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "netgain/lyapunov.hpp"
#include "netgain/plant.hpp"

namespace netgain {

/// Axis-aligned scan window over the entries of the nominal gain K_1,
/// flattened row-major. Grid points along dimension d sit at
/// lower[d] + i * step[d].
struct GridSpec {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    Eigen::VectorXd step;

    int dims() const { return static_cast<int>(lower.size()); }
    void validate() const;  // lower < upper, step > 0, >= 3 points per dim

    std::vector<long> shape() const;  ///< points per dimension
    long total_points() const;
    Eigen::VectorXd point(long index) const;        ///< row-major decode
    std::vector<long> multi_index(long index) const;
};

/// Stability labels over a grid of nominal gains. A point is labeled true
/// only when the feasibility solver certified the full schedule at that
/// K_1; Unknown verdicts are counted and labeled unstable (conservative).
struct StabilityRegion {
    GridSpec spec;
    std::vector<std::uint8_t> labels;          ///< 1 = certified stable
    std::vector<FeasibilityStatus> statuses;   ///< per-point solver verdict
    long unknown_count = 0;

    long stable_count() const;
};

struct ScanConfig {
    SolverConfig solver;
    int threads = 0;              ///< 0 = hardware concurrency
    long max_points = 1000000;    ///< refusal cap on grid cardinality
    /// Re-run check_certificate on every Feasible verdict and throw if any
    /// fails; the scan is only as trustworthy as its certificates.
    bool verify_certificates = true;
};

/// Labels each grid point g by certifying the schedule (K_1 = g, K_2..K_M =
/// predictive). `predictive` holds M-1 gains; empty means M = 1.
StabilityRegion scan_region(const DiscretePlant& plant,
                            const std::vector<Eigen::MatrixXd>& predictive,
                            const GridSpec& spec, const ScanConfig& config = {});

/// Baseline without prediction: every buffer age reuses the scanned K_1.
StabilityRegion scan_region_constant_gain(const DiscretePlant& plant, int M,
                                          const GridSpec& spec, const ScanConfig& config = {});

/// Riemann-sum size of the stable set: (# true labels) * prod(step).
double objective_J(const StabilityRegion& region);

struct BallFit {
    Eigen::VectorXd center;   ///< coordinates of the chosen grid point
    double radius = 0.0;      ///< Euclidean, in raw gain units
    long center_index = -1;   ///< row-major grid index of the center
};

/// Largest ball inscribed in the stable set: the center is the true-labeled
/// grid point farthest (exact squared-Euclidean distance transform) from
/// the false-labeled complement, with the scan-window faces counted as
/// unstable; ties resolve to the smallest grid index. Throws
/// NoStableRegionError when no point is labeled true.
BallFit largest_inscribed_ball(const StabilityRegion& region);

}  // namespace netgain
