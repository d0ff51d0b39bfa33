#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "netgain/plant.hpp"
#include "netgain/region.hpp"

namespace netgain {

struct SwarmConfig {
    int particles = 20;
    int iterations = 100;       ///< velocity/position update sweeps
    double beta1 = 1.49;        ///< cognitive learning rate
    double beta2 = 1.49;        ///< social learning rate
    double alpha_start = 0.9;   ///< inertia at the first update
    double alpha_end = 0.1;     ///< inertia at the last update
    Eigen::VectorXd lower;      ///< search box, one entry per dimension
    Eigen::VectorXd upper;
    std::uint64_t seed = 0;

    int dims() const { return static_cast<int>(lower.size()); }
    void validate() const;
};

struct Particle {
    Eigen::VectorXd position;
    Eigen::VectorXd velocity;
    Eigen::VectorXd best_position;
    double best_value = 0.0;
};

/// Uniform [0,1] draw for the velocity update; term 0 is the cognitive
/// coefficient, term 1 the social one. Supplied explicitly so callers
/// control the randomness.
using ThetaDraw = std::function<double(int particle, int dim, int term)>;

/// Inertia for update k (0-based): linear from alpha_start to alpha_end,
/// hitting alpha_end exactly at the final update.
double inertia_at(const SwarmConfig& config, int k);

/// One velocity/position update:
///   v' = alpha(k) v + beta1 theta1 (best - x) + beta2 theta2 (swarm_best - x)
///   x' = x + v'
/// Positions are clamped to the box; a clamped component has its velocity
/// zeroed. Best-so-far bookkeeping is the caller's job.
void step(std::vector<Particle>& swarm, const Eigen::VectorXd& swarm_best,
          const SwarmConfig& config, int k, const ThetaDraw& theta);

struct PsoResult {
    Eigen::VectorXd best_position;
    double best_value = 0.0;
    /// Swarm-best objective value after initialization (entry 0) and after
    /// each update; non-increasing by construction.
    std::vector<double> history;
};

/// Full swarm run: uniform random initialization in the box, zero initial
/// velocities, `iterations` updates, returns the all-time best. Randomness
/// is partitioned per particle per iteration from the seed, so results are
/// bit-identical no matter how objective evaluations are scheduled.
/// Repeated positions are looked up instead of re-evaluated; the objective
/// must be pure. A NaN objective value raises NumericalError naming the
/// position.
PsoResult pso_minimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                       const SwarmConfig& config);

struct OptimizeOptions {
    SolverConfig solver;          ///< used for the final fine-grid refit
    SolverConfig search_solver;   ///< cheaper settings inside the swarm objective
    double search_step = 0.02;    ///< coarse grid step during the search
    int threads = 0;
    bool verify_certificates = true;

    OptimizeOptions();
};

struct OptimizeReport {
    GainSchedule schedule;    ///< K1 from the ball center, K2..KM from the swarm
    double J = 0.0;           ///< objective on the fine grid at the optimum
    BallFit ball;             ///< fine-grid inscribed ball
    StabilityRegion region;   ///< fine-grid region at the optimum
    PsoResult swarm;          ///< search trajectory (values are -J, coarse grid)
    GridSpec search_grid;
};

/// Selects predictive gains K_2..K_M by swarm-minimizing -J over the given
/// box, where J is the size of the certified-stable K_1 region; the nominal
/// K_1 is then the center of the largest ball inscribed in the fine-grid
/// region at the optimum. Requires M >= 2.
OptimizeReport optimize_predictive_gains(const DiscretePlant& plant, int M,
                                         const GridSpec& fine_grid, const SwarmConfig& swarm,
                                         const OptimizeOptions& options = {});

}  // namespace netgain
