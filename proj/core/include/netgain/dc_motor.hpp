#pragma once

#include <Eigen/Dense>

#include "netgain/plant.hpp"

namespace netgain::dc_motor {

// Bundled demo system: a networked DC servo sampled at 50 ms, together with
// a gain schedule known to keep it stable for dropout gaps up to drop_bound.
// Used by the `netgain demo dc-motor` command and by the test suites.

inline constexpr int drop_bound = 3;  // at most two consecutive losses

DiscretePlant plant();

/// Best single gain found by a constant-gain scan of the default window.
Eigen::RowVector2d constant_fit_gain();  // [0.16 0.01]

/// Reference predictive schedule: nominal gain plus two predictive gains.
GainSchedule reference_schedule();  // K1=[0.1 0.02], K2=[0.0837 0.056], K3=[0.1527 0.0682]

/// Initial condition used by the demo simulations.
Eigen::Vector2d demo_initial_state();  // [3.65 0]

}  // namespace netgain::dc_motor
