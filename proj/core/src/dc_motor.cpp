#include "netgain/dc_motor.hpp"

namespace netgain::dc_motor {

DiscretePlant plant() {
    DiscretePlant p;
    p.F.resize(2, 2);
    p.F << 1.0, 0.004601,
           4.601e-3, 4.018e-5;
    p.G.resize(2, 1);
    p.G << 0.3487,
           7.681;
    p.Ts = 0.05;
    p.validate();
    return p;
}

Eigen::RowVector2d constant_fit_gain() { return {0.16, 0.01}; }

GainSchedule reference_schedule() {
    GainSchedule s;
    s.M = drop_bound;
    s.K = {
        (Eigen::MatrixXd(1, 2) << 0.1, 0.02).finished(),
        (Eigen::MatrixXd(1, 2) << 0.0837, 0.056).finished(),
        (Eigen::MatrixXd(1, 2) << 0.1527, 0.0682).finished(),
    };
    s.validate();
    return s;
}

Eigen::Vector2d demo_initial_state() { return {3.65, 0.0}; }

}  // namespace netgain::dc_motor
